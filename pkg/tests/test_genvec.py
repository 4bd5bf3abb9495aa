import random

import pytest

from isoprod import knowndata as kd
from isoprod.catalog import abelian_group, catalog_group
from isoprod.classify import known_example_data
from isoprod.fuchsian import Signature, parse_signature
from isoprod.genvec import (BuildingDataError, GeneratingVector, admissibility_failures,
                            enumerate_generating_vectors, freeness_witness, is_admissible,
                            is_free_diagonal_action, long_relation, parse_vector,
                            validate_building_data)
from isoprod.groups import automorphisms, make_abelian_group, parse_group_spec

from oracles import brute_vectors, naive_commutator, naive_order, naive_span

BASE = Signature(1, (2, 2))


def _keys(vs):
    return sorted((v.elliptic, v.hyperbolic) for v in vs)


@pytest.mark.parametrize("spec,sig", [
    ("Z2 x Z2", "(0|2^6)"), ("Z2 x Z2", "(1|2^2)"), ("Z2", "(0|2^2)"), ("Z2 x Z4", "(0|2^2,4^2)"),
    ("S3", "(0|2^4)"), ("S3", "(1|3)"), ("S3", "(0|2,2,3)"), ("Z2 x Z4", "(1|2^2)"), ("D4", "(1|2)"),
    ("Z4", "(1|2^2)"),
])
def test_enumeration_matches_bruteforce(spec, sig):
    G = parse_group_spec(spec)
    s = parse_signature(sig)
    got = enumerate_generating_vectors(G, s)
    assert _keys(got) == sorted(brute_vectors(G, s.branching, s.orbit_genus))


def test_klein_six_involutions_count():
    G = make_abelian_group([2, 2])
    vs = enumerate_generating_vectors(G, parse_signature("(0|2^6)"))
    # 3^5 tuples of involutions whose product is an involution, minus non-generating ones
    assert len(vs) == len(brute_vectors(G, (2,) * 6)) == 180


def test_z2_two_involutions():
    G = make_abelian_group([2])
    vs = enumerate_generating_vectors(G, parse_signature("(0|2^2)"))
    assert [v.elliptic for v in vs] == [(1, 1)]


def test_klein_base_vectors_with_fixed_g_and_h1():
    G = abelian_group((2, 2))
    e1, e2 = G.parse_element("(1,0)"), G.parse_element("(0,1)")
    sols = [w for w in enumerate_generating_vectors(G, BASE) if w.elliptic[0] == e1 and w.hyperbolic[0] == e2]
    assert sorted(G.label(w.hyperbolic[1]) for w in sols) == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]


@pytest.mark.parametrize("inv_", [(2, 2), (2, 4), (2, 8), (2, 2, 2), (4, 4), (2, 6)])
def test_abelian_base_vectors_have_equal_elliptic_entries(inv_):
    G = abelian_group(inv_)
    for w in enumerate_generating_vectors(G, BASE):
        assert w.elliptic[0] == w.elliptic[1]


def test_enumeration_is_sorted_and_deterministic():
    G = catalog_group("S4")
    s = parse_signature("(0|2^3,4)")
    a = enumerate_generating_vectors(G, s)
    assert a == sorted(a) == enumerate_generating_vectors(G, s)


@pytest.mark.parametrize("spec,sig", [("A4", "(0|3^4)"), ("S4", "(0|2^3,4)"), ("D6", "(1|2^2)"),
                                      ("A5", "(0|2,5^2)"), ("Dic3", "(1|3)"), ("S3 x Z3", "(0|2^2,3^2)")])
def test_enumerated_vectors_pass_independent_checker(spec, sig):
    G = catalog_group(spec)
    s = parse_signature(sig)
    vs = enumerate_generating_vectors(G, s)
    assert vs
    for v in random.Random(1).sample(vs, min(200, len(vs))):
        assert all(naive_order(G, g) == m for g, m in zip(v.elliptic, s.branching))
        x = 0
        for g in v.elliptic:
            x = G.table[x][g]
        if v.hyperbolic:
            x = G.table[x][naive_commutator(G, *v.hyperbolic)]
        assert x == 0
        assert len(naive_span(G, v.entries)) == G.order


def test_admissibility_failures_named():
    G = catalog_group("S3")
    s = Signature(0, (2, 2, 3))
    v = GeneratingVector.from_labels(G, s, ["(12)", "(12)", "(123)"])
    assert admissibility_failures(G, v) == ["long_relation"]
    u = GeneratingVector.from_labels(G, Signature(0, (2, 2)), ["(12)", "(12)"])
    assert admissibility_failures(G, u) == ["generation"]
    w = GeneratingVector.from_labels(G, s, ["(12)", "(123)", "(13)"])
    assert "orders" in admissibility_failures(G, w)
    assert not is_admissible(G, w)


def test_vector_shape_checked():
    with pytest.raises(ValueError):
        GeneratingVector(Signature(0, (2, 2)), (1,))
    with pytest.raises(ValueError):
        GeneratingVector(Signature(1, (2,)), (1,), ())


def test_type_I_data_free():
    G = abelian_group((2, 2))
    V = GeneratingVector.from_labels(G, Signature(0, (2,) * 6),
                                     ["(0,1)"] * 4 + ["(1,1)"] * 2)
    W = GeneratingVector.from_labels(G, BASE, ["(1,0)", "(1,0)"], ["(0,1)", "(0,0)"])
    assert is_admissible(G, V) and is_admissible(G, W)
    assert is_free_diagonal_action(G, V, W)


def test_z4z4_three_fours_never_free():
    G = abelian_group((4, 4))
    V = GeneratingVector.from_labels(G, Signature(0, (4, 4, 4)), ["(1,0)", "(0,1)", "(3,3)"])
    assert is_admissible(G, V)
    Ws = enumerate_generating_vectors(G, BASE)
    assert Ws
    assert not any(is_free_diagonal_action(G, V, W) for W in Ws)
    assert freeness_witness(G, V, Ws[0]) is not None


def test_s3_known_data_free():
    ex = kd.NONABELIAN_EXAMPLES[0]
    G, V, W = known_example_data(ex)
    assert is_free_diagonal_action(G, V, W)
    assert freeness_witness(G, V, W) is None


@pytest.mark.parametrize("spec,sigV", [("S3", "(0|2^6)"), ("A4", "(0|3^4)"), ("Z2 x Z4", "(0|2^2,4^2)")])
def test_freeness_symmetric_and_aut_invariant(spec, sigV):
    G = catalog_group(spec) if spec[0] != "Z" else parse_group_spec(spec)
    Vs = enumerate_generating_vectors(G, parse_signature(sigV))
    sigW = parse_signature("(1|2^2)") if G.is_abelian else parse_signature("(1|3)" if spec == "S3" else "(1|2)")
    Ws = enumerate_generating_vectors(G, sigW)
    rng = random.Random(7)
    auts = automorphisms(G)
    for _ in range(200):
        V, W = rng.choice(Vs), rng.choice(Ws)
        free = is_free_diagonal_action(G, V, W)
        # swap roles of the elliptic data
        V2 = GeneratingVector(Signature(0, W.sig.branching), W.elliptic)
        W2 = GeneratingVector(Signature(1, V.sig.branching), V.elliptic, W.hyperbolic)
        assert is_free_diagonal_action(G, V2, W2) == free
        lam = rng.choice(auts)
        lV = GeneratingVector(V.sig, tuple(lam(x) for x in V.elliptic))
        lW = GeneratingVector(W.sig, tuple(lam(x) for x in W.elliptic), tuple(lam(x) for x in W.hyperbolic))
        assert is_free_diagonal_action(G, lV, lW) == free


@pytest.mark.parametrize("inv_,m", [((2, 2), (2,) * 6), ((2, 4), (2, 2, 4, 4)), ((2, 8), (2, 8, 8))])
def test_order_two_elliptic_in_fibre_span_kills_freeness(inv_, m):
    G = abelian_group(inv_)
    Vs = enumerate_generating_vectors(G, Signature(0, m))
    for W in enumerate_generating_vectors(G, BASE):
        ell = W.elliptic[0]
        if G.orders[ell] != 2:
            continue
        for V in Vs[:50]:
            span = set()
            for g in V.elliptic:
                span |= {G.power(g, k) for k in range(G.orders[g])}
            if ell in span:
                assert not is_free_diagonal_action(G, V, W)


def test_validate_known_examples():
    for ex in kd.NONABELIAN_EXAMPLES:
        G, V, W = known_example_data(ex)
        bd = validate_building_data(G, V, W)
        assert (bd.genus.g_C, bd.genus.g_F) == (ex["g_C"], ex["g_F"])
        assert bd.invariants.K2 == 8 and bd.invariants.chi == 1
        assert bd.invariants.p_g == bd.invariants.q == 1
        assert G.order == (bd.genus.g_C - 1) * (bd.genus.g_F - 1)


def test_validate_rejects_tampered_s3():
    ex = dict(kd.NONABELIAN_EXAMPLES[0])
    V = list(ex["V"])
    V[4] = "(1 2)"
    ex["V"] = tuple(V)
    G, V, W = known_example_data(ex)
    with pytest.raises(BuildingDataError) as e:
        validate_building_data(G, V, W)
    assert e.value.check == "admissibility"
    assert "long_relation" in str(e.value)


def test_validate_rejects_cyclic_group():
    G = make_abelian_group([4])
    V = GeneratingVector(Signature(0, (2,) * 6), (2,) * 6)
    W = GeneratingVector(BASE, (2, 2), (1, 0))
    assert is_admissible(G, W)
    with pytest.raises(BuildingDataError) as e:
        validate_building_data(G, V, W)
    assert e.value.check == "admissibility"  # V cannot generate Z4
    # with V admissible over Z6, freeness is what fails
    G6 = make_abelian_group([6])
    V6 = GeneratingVector(Signature(0, (2, 2, 6, 6)), (3, 3, 1, 5))
    W6 = GeneratingVector(BASE, (3, 3), (1, 0))
    assert is_admissible(G6, V6) and is_admissible(G6, W6)
    with pytest.raises(BuildingDataError) as e:
        validate_building_data(G6, V6, W6)
    assert e.value.check in ("genus", "order", "freeness")


def test_validate_checks_named():
    G = abelian_group((2, 2))
    V = GeneratingVector(Signature(0, (2,) * 6), (1, 1, 1, 1, 2, 2))
    W = GeneratingVector(BASE, (3, 3), (1, 0))
    with pytest.raises(BuildingDataError) as e:
        validate_building_data(G, W, V)
    assert e.value.check == "fibre_signature"
    with pytest.raises(BuildingDataError) as e:
        validate_building_data(G, V, V)
    assert e.value.check == "base_signature"
    W_bad = GeneratingVector(BASE, (1, 1), (2, 0))
    with pytest.raises(BuildingDataError) as e:
        validate_building_data(G, V, W_bad)
    assert e.value.check == "freeness"


def test_parse_vector_round_trip():
    for ex in kd.NONABELIAN_EXAMPLES:
        G, V, W = known_example_data(ex)
        assert parse_vector(G, V.sig, V.format(G)) == V
        assert parse_vector(G, W.sig, W.format(G)) == W
    G = abelian_group((2, 4))
    W = GeneratingVector(BASE, (4, 4), (1, 0))
    assert parse_vector(G, BASE, W.format(G)) == W
    with pytest.raises(ValueError):
        parse_vector(G, BASE, "(1,0)")


def test_long_relation_value():
    G = catalog_group("A5")
    ex = kd.NONABELIAN_EXAMPLES[-1]
    _, V, W = known_example_data(ex)
    assert long_relation(G, V.elliptic, ()) == 0
    assert long_relation(G, W.elliptic, W.hyperbolic) == 0
