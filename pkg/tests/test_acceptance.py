"""Acceptance criteria 1-9.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every criterion
is its own test and a PASS/FAIL line per criterion is printed in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

import sys
import time
from itertools import combinations
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ordrep import (  # noqa: E402
    OMEGA,
    THREE,
    Bound,
    build_representation,
    closure_meet_up,
    encode_separation,
    enumerate_filters_bruteforce,
    generate_pk,
    is_filter,
    is_representable,
    solve_basic,
    verify_representation,
)
from ordrep.filters import meet_violation, prime_violation  # noqa: E402

BOUND_PAIRS = [(THREE, THREE), (THREE, OMEGA), (OMEGA, THREE), (OMEGA, OMEGA)]
RESULTS = {}


def _corpus():
    return oracles.small_posets(5), oracles.random_posets(200, (6, 8))


def criterion_1():
    times = []
    for k in (0, 1, 2):
        start = time.perf_counter()
        rep = is_representable(generate_pk(k).poset, THREE, THREE)
        times.append(time.perf_counter() - start)
        if rep.representable:
            return False, f"P_{k} reported (3,3)-representable"
    ok = times[0] < 1 and times[2] < 300
    return ok, "P_0, P_1, P_2 not (3,3)-representable; " + ", ".join(f"P_{k} {t:.2f}s" for k, t in enumerate(times))


def _stated_failing_set(pk):
    P = pk.poset
    xs = {pk.p} | pk.layer(0)
    ys = {pk.q} | pk.hats(pk.k)
    return {(x, y) for x in xs for y in ys if not P.leq(x, y)}


def criterion_2():
    ok = True
    parts = []
    for k, count in ((0, 37), (1, 65), (2, 155)):
        pk = generate_pk(k)
        expected = _stated_failing_set(pk)
        got = {b: set(is_representable(pk.poset, b, b).failing_pairs) for b in (THREE, OMEGA)}
        same = got[THREE] == got[OMEGA]
        match = got[THREE] == expected and len(expected) == count
        ok &= same and match
        parts.append(
            f"P_{k}: stated {len(expected)}/{count}, found {len(got[THREE])} (3,3) / {len(got[OMEGA])} (w,w), "
            f"{'equal' if match else 'differ'}, bounds {'agree' if same else 'disagree'}"
        )
    return ok, "; ".join(parts)


def criterion_3():
    for k in (0, 1, 2):
        pk = generate_pk(k)
        P = pk.poset
        n0 = sorted(pk.layer(0))
        expected = {sum(1 << x for x in s): pk.p for r in range(2, 5) for s in combinations(n0, r)}
        joins = dict(P.nontrivial_joins())
        if joins != expected:
            return False, f"P_{k}: join table differs ({len(joins)} vs {len(expected)})"
        outside = set(range(P.size)) - set(n0) - {pk.p}
        if {x for x in range(P.size) if P.is_join_prime(x)} != outside:
            return False, f"P_{k}: join-prime set differs"
    return True, "P_0..P_2: joins are exactly the 11 subsets of N_0 with join p; the rest is join-prime"


def criterion_4():
    pk = generate_pk(2)
    P = pk.poset
    s = [pk.index_of(c) for c in "abc"]
    want = {pk.index_of(lab) for lab in ("e(a,b)", "e(a,c)", "e(b,c)")}
    ok = True
    parts = []
    for m in (THREE, OMEGA):
        closed = closure_meet_up(P, s, m)
        n1, n2 = closed & pk.layer(1), closed & pk.layer(2)
        ok &= n1 == want and len(n2) == 3
        parts.append(f"m={m}: |N_1 part|={len(n1)}, |N_2 part|={len(n2)}, closure size {len(closed)}/{P.size}")
    return ok, "; ".join(parts)


def criterion_5():
    start = time.perf_counter()
    sizes = []
    for k in range(4):
        pk = generate_pk(k)
        P = pk.poset
        for y in range(P.size):
            if P.down[y] & ~(1 << y) and P.up[y] & ~(1 << y):
                return False, f"P_{k}: 3-element chain through {P.labels[y]}"
        lo, hi = P.extremal_elements()
        hats = set().union(*(pk.hats(n) for n in range(k + 1)))
        layers = set().union(*(pk.layer(n) for n in range(k + 1)))
        if hi != {pk.p} | hats or lo != {pk.q} | layers:
            return False, f"P_{k}: extremal elements differ"
        if P.height() != 2:
            return False, f"P_{k}: height {P.height()}"
        for n in range(k):
            if len(pk.layer(n + 1)) != comb(len(pk.layer(n)), 2):
                return False, f"P_{k}: |N_{n + 1}| wrong"
        sizes.append(P.size)
    elapsed = time.perf_counter() - start
    return sizes == [14, 32, 77, 392] and elapsed < 10, f"sizes {sizes}, {elapsed:.2f}s"


def _oracle_representable(P, m, n):
    fs = [f.mask for f in enumerate_filters_bruteforce(P, m, n)]
    return [
        (x, y) for x in range(P.size) for y in range(P.size)
        if not P.leq(x, y) and not any(g >> x & 1 and not g >> y & 1 for g in fs)
    ]


def _cnf_failing(P, m, n):
    return [
        (x, y) for x in range(P.size) for y in range(P.size)
        if not P.leq(x, y) and solve_basic(encode_separation(P, x, y, m, n)) is None
    ]


def criterion_6():
    start = time.perf_counter()
    small, rand = _corpus()
    checked = reps = 0
    for P in small + rand:
        for m, n in BOUND_PAIRS:
            report = is_representable(P, m, n)
            if report.failing_pairs != _oracle_representable(P, m, n):
                return False, f"decider and oracle disagree on {P.to_json()} at ({m},{n})"
            if report.failing_pairs != _cnf_failing(P, m, n):
                return False, f"decider and CNF disagree on {P.to_json()} at ({m},{n})"
            if report.representable:
                rep = build_representation(P, m, n, report)
                check = verify_representation(P, rep, m, n)
                if rep is None or not check.ok:
                    return False, f"representation fails on {P.to_json()} at ({m},{n})"
                reps += 1
            checked += 1
    elapsed = time.perf_counter() - start
    return elapsed < 300, f"{len(small)}+{len(rand)} posets x 4 bounds = {checked} checks, {reps} verified representations, {elapsed:.1f}s"


def criterion_7():
    for name, P in (("M3", oracles.m3()), ("N5", oracles.n5())):
        if is_representable(P, THREE, THREE).representable:
            return False, f"{name} reported (3,3)-representable"
        if not oracles.SubsetTables(P).failing_pairs(3, 3):
            return False, f"oracle disagrees on {name}"
    for name, P in (("B2", oracles.boolean_lattice(2)), ("B3", oracles.boolean_lattice(3)), ("D12", oracles.divisor_lattice(12))):
        rep = build_representation(P, OMEGA, OMEGA)
        if rep is None or oracles.SubsetTables(P).failing_pairs(None, None):
            return False, f"{name} not (w,w)-representable"
        check = verify_representation(P, rep, OMEGA, OMEGA)
        if not (check.ok and check.order_embedding):
            return False, f"{name} representation fails verification"
    return True, "M3, N5 not (3,3)-representable; B2, B3, D12 (w,w)-representable and verified"


def criterion_8():
    _, rand = _corpus()
    extra = [oracles.meet_sensitive(), oracles.join_sensitive()]
    levels = [THREE, Bound.finite(4), OMEGA]
    grid = [(m, n) for m in levels for n in levels]
    implications = transfers = sensitive = 0
    for P in rand + extra:
        verdict = {b: is_representable(P, *b).representable for b in grid}
        if len(set(verdict.values())) > 1:
            sensitive += 1
        for big in grid:
            for small in grid:
                if small[0] <= big[0] and small[1] <= big[1] and verdict[big]:
                    implications += 1
                    if not verdict[small]:
                        return False, f"representable at {big} but not at {small}: {P.to_json()}"
        if P.size <= 8:
            for f in enumerate_filters_bruteforce(P, OMEGA, OMEGA):
                for b in grid:
                    transfers += 1
                    if not is_filter(P, f.carrier, *b):
                        return False, f"filter does not transfer to {b}"
    return True, f"{len(rand)}+{len(extra)} posets, {implications} implications, {transfers} filter transfers, {sensitive} bound-sensitive posets"


def criterion_9():
    small, rand = _corpus()
    checked = 0
    for P in small + rand:
        T = oracles.SubsetTables(P)
        for g in range(1 << P.size):
            if (meet_violation(P, g, OMEGA) is None) != T.complete(g, None):
                return False, f"w-completeness shortcut wrong on {P.to_json()}"
            if (prime_violation(P, g, OMEGA) is None) != T.prime(g, None):
                return False, f"w-primality shortcut wrong on {P.to_json()}"
            checked += 1
    return True, f"{checked} subsets over {len(small) + len(rand)} posets agree with direct quantification"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def _line(i, ok, detail):
    return f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("i", range(1, len(CRITERIA) + 1))
def test_criterion(i):
    ok, detail = CRITERIA[i - 1]()
    RESULTS[i] = (ok, detail)
    print(_line(i, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
