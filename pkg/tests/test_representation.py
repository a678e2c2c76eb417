import random

import pytest

from conftest import BOUND_PAIRS
from oracles import boolean_lattice, chain, divisor_lattice, m3, random_poset
from ordrep import OMEGA, THREE, Representation, build_poset, build_representation, enumerate_filters_bruteforce
from ordrep import is_filter, verify_representation
from ordrep.poset import antichain_masks


def test_two_chain():
    C = build_poset(["a", "b"], [("a", "b")])
    rep = build_representation(C, THREE, THREE)
    assert [sorted(f) for f in rep.filters] == [[1], [0, 1]]
    assert rep.h == ({1}, {0, 1})
    assert verify_representation(C, rep, THREE, THREE).ok


def test_single_element():
    P = build_poset(["x"], [])
    rep = build_representation(P, OMEGA, OMEGA)
    assert rep.to_dict(P) == {"filters": [["x"]], "h": {"x": [0]}}


def test_pk0_none(p0):
    assert build_representation(p0.poset, THREE, THREE) is None


def test_boolean_lattice_verifies():
    B = boolean_lattice(3)
    rep = build_representation(B, OMEGA, OMEGA)
    report = verify_representation(B, rep, OMEGA, OMEGA)
    assert report.ok and report.order_embedding


def test_zero_filters_not_injective():
    A = build_poset(["x", "y"], [])
    report = verify_representation(A, Representation.from_filters(A, []), THREE, THREE)
    assert not report.ok and report.clause == "injective"
    assert report.to_dict(A)["elements"] == ["x", "y"]


def test_m3_every_family_fails():
    M = m3()
    ups = sorted({M.up_mask(a) for a in antichain_masks(M)})
    rng = random.Random(3)
    for _ in range(300):
        fam = [g for g in ups if rng.random() < 0.5]
        rep = Representation.from_filters(M, [[x for x in range(5) if g >> x & 1] for g in fam])
        report = verify_representation(M, rep, THREE, THREE)
        assert not (report.ok and report.order_embedding)


def test_meet_clause_failure_reported():
    D = divisor_lattice(12)
    # Principal up-sets give an injective family; the extra up-set holds 2 and 3 but not 2 ^ 3 = 1.
    idx = D.index
    fam = [D.upset([x]) for x in range(D.size)] + [D.upset([idx("2"), idx("3")])]
    report = verify_representation(D, Representation.from_filters(D, fam), THREE, THREE)
    assert not report.ok and report.clause == "meet"
    assert report.to_dict(D)["value"] == "1"


def test_json_round_trip():
    D = divisor_lattice(12)
    rep = build_representation(D, OMEGA, OMEGA)
    assert Representation.from_dict(D, rep.to_dict(D)) == rep


def test_adding_filters_keeps_monotonicity():
    rng = random.Random(17)
    for _ in range(60):
        P = random_poset(rng, rng.randint(2, 7))
        for m, n in BOUND_PAIRS:
            rep = build_representation(P, m, n)
            if rep is None:
                continue
            extra = [f.carrier for f in enumerate_filters_bruteforce(P, m, n)]
            more = Representation.from_filters(P, list(rep.filters) + extra)
            report = verify_representation(P, more, m, n)
            assert report.ok and report.order_embedding
            assert all(is_filter(P, f, m, n) for f in more.filters)


def test_chain_verifies_at_all_bounds():
    for m, n in BOUND_PAIRS:
        C = chain(5)
        assert verify_representation(C, build_representation(C, m, n), m, n).ok
