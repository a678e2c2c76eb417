import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ordrep import OMEGA, THREE, generate_pk  # noqa: E402

BOUND_PAIRS = [(THREE, THREE), (THREE, OMEGA), (OMEGA, THREE), (OMEGA, OMEGA)]


@pytest.fixture(scope="session")
def small_corpus():
    return oracles.small_posets(5)


@pytest.fixture(scope="session")
def random_corpus():
    return oracles.random_posets()


@pytest.fixture(scope="session")
def p0():
    return generate_pk(0)


@pytest.fixture(scope="session")
def p1():
    return generate_pk(1)


@pytest.fixture(scope="session")
def p2():
    return generate_pk(2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, _line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(RESULTS):
        terminalreporter.write_line(_line(i, *RESULTS[i]))
