import itertools

import pytest
from hypothesis import given, settings, strategies as st

from isoprod.catalog import abelian_group, catalog_group, nonabelian_catalog
from isoprod.groups import (Automorphism, Element, GroupError, alternating_group, automorphisms,
                            automorphisms_bruteforce, compose, cyclic_conjugate_union, cyclic_subgroup,
                            dicyclic_group, dihedral_group, direct_product, exponent, extend_homomorphism,
                            generates, inv, make_abelian_group, make_permutation_group, mul, order_of,
                            parse_cycles, parse_group_spec, subgroup_generated, symmetric_group)

from oracles import brute_automorphism_count, naive_order, naive_span, order_statistics

SMALL = ["Z2 x Z2", "Z2 x Z4", "Z4", "Z6", "S3", "D4", "Dic2", "Z2 x Z2 x Z2"]


def test_klein_four_all_involutions():
    G = make_abelian_group([2, 2])
    assert G.order == 4
    assert [G.order_of(a) for a in range(1, 4)] == [2, 2, 2]
    assert G.elements[0] == (0, 0)


def test_z2_z8_has_order_8_element():
    G = make_abelian_group([2, 8])
    assert G.order == 16
    assert max(G.orders) == 8


def test_z2_z4_order_statistics_match_bruteforce():
    G = make_abelian_group([2, 4])
    assert dict(order_statistics(G)) == {1: 1, 2: 3, 4: 4}
    assert sorted(G.orders) == sorted(naive_order(G, a) for a in range(8))


def test_empty_invariants_rejected():
    with pytest.raises(GroupError, match="trivial group not supported"):
        make_abelian_group([])
    with pytest.raises(GroupError):
        make_abelian_group([1, 2])


def test_permutation_closure_examples():
    assert make_permutation_group(3, ["(12)", "(123)"]).order == 6
    A = make_permutation_group(5, ["(24)(35)", "(13452)", "(12345)"])
    assert A.order == 60
    D = make_permutation_group(4, ["(1234)", "(13)"])
    assert D.order == 8 == len(naive_span(D, range(1, 8)))


def test_closure_bound():
    with pytest.raises(GroupError, match="bound"):
        make_permutation_group(5, ["(12345)", "(12)"], bound=100)


def test_right_to_left_composition():
    G = symmetric_group(3)
    a, b = G.parse_element("(13)"), G.parse_element("(12)")
    assert G.label(G.mul(a, b)) == "(1 2 3)"
    assert compose(parse_cycles("(13)", 3), parse_cycles("(12)", 3)) == parse_cycles("(123)", 3)


def test_element_api_and_mixed_groups():
    G = symmetric_group(3)
    H = make_abelian_group([2, 8])
    x = G.element(G.parse_element("(1 2)"))
    assert mul(G.identity, x) == x
    assert inv(x) == x and order_of(x) == 2
    assert (x * x) == G.identity
    y = H.element(H.parse_element("(1,4)"))
    assert y.order == 2
    with pytest.raises(GroupError):
        _ = x * y
    with pytest.raises(GroupError):
        Element(G, 99)


def test_subgroup_generated():
    G = make_abelian_group([2, 2, 2])
    assert subgroup_generated(G, []) == frozenset({0})
    e2, e3 = G.parse_element("(0,1,0)"), G.parse_element("(0,0,1)")
    assert len(subgroup_generated(G, [e2, e3])) == 4
    A = catalog_group("A5")
    gens = [A.parse_element(x) for x in ("(24)(35)", "(13452)", "(12345)")]
    assert len(subgroup_generated(A, gens)) == 60


def test_cyclic_conjugate_union_examples():
    G = make_abelian_group([2, 4])
    assert cyclic_conjugate_union(G, 0) == frozenset({0})
    g = G.parse_element("(0,1)")
    assert cyclic_conjugate_union(G, g) == cyclic_subgroup(G, g)
    assert len(cyclic_conjugate_union(G, g)) == 4
    S = symmetric_group(3)
    got = {S.label(x) for x in cyclic_conjugate_union(S, S.parse_element("(12)"))}
    assert got == {"()", "(1 2)", "(1 3)", "(2 3)"}


@pytest.mark.parametrize("spec", ["S3", "D4", "A4", "Dic3", "S4", "D6 x Z2"])
def test_cyclic_conjugate_union_conjugation_invariant(spec):
    G = catalog_group(spec)
    for g in range(G.order):
        u = cyclic_conjugate_union(G, g)
        for h in range(G.order):
            assert cyclic_conjugate_union(G, G.conj(h, g)) == u


@pytest.mark.parametrize("inv_", [(2, 2), (2, 4), (2, 8), (4, 4), (2, 2, 2)])
def test_cyclic_conjugate_union_abelian(inv_):
    G = abelian_group(inv_)
    for g in range(G.order):
        assert cyclic_conjugate_union(G, g) == cyclic_subgroup(G, g)


@pytest.mark.parametrize("spec", SMALL)
def test_automorphisms_match_bruteforce(spec):
    G = parse_group_spec(spec)
    auts = automorphisms(G)
    assert len(auts) == brute_automorphism_count(G)
    assert {a.map for a in auts} == {a.map for a in automorphisms_bruteforce(G)}
    assert auts[0].is_identity()


@pytest.mark.parametrize("spec,count", [
    ("Z2 x Z2", 6), ("Z2 x Z4", 8), ("Z2 x Z2 x Z2", 168), ("Z2 x Z8", 16),
    ("S3", 6), ("D4", 8), ("D6", 12), ("A4", 24), ("S4", 24), ("A5", 120), ("Dic2", 24),
])
def test_automorphism_counts(spec, count):
    assert len(automorphisms(parse_group_spec(spec))) == count


@pytest.mark.parametrize("spec", ["Z2 x Z4", "S3", "D4", "A4", "Dic3", "Z2 x Z8"])
def test_automorphisms_form_a_group(spec):
    G = parse_group_spec(spec)
    auts = automorphisms(G)
    maps = {a.map for a in auts}
    for a in auts:
        assert a.inverse().map in maps
        for b in auts:
            assert a.compose(b).map in maps
        for x in range(G.order):
            assert G.orders[a(x)] == G.orders[x]
        for x in range(G.order):
            for y in range(G.order):
                assert a(G.mul(x, y)) == G.mul(a(x), a(y))


def test_automorphism_bound():
    with pytest.raises(GroupError, match="bound"):
        automorphisms(make_abelian_group([2, 36]), bound=64)


def test_extend_homomorphism_rejects_non_automorphism():
    G = make_abelian_group([2, 4])
    e1, e2 = G.parse_element("(1,0)"), G.parse_element("(0,1)")
    assert extend_homomorphism(G, [e1, e2], [e1, G.parse_element("(0,2)")]) is None
    lam = extend_homomorphism(G, [e1, e2], [e1, G.parse_element("(0,3)")])
    assert isinstance(lam, Automorphism) and lam(G.parse_element("(1,1)")) == G.parse_element("(1,3)")


@pytest.mark.parametrize("n", [3, 4, 5, 6, 12])
def test_dihedral_presentation(n):
    G = dihedral_group(n)
    r, s = G.words["r"], G.words["s"]
    assert G.order == 2 * n
    assert G.orders[r] == n and G.orders[s] == 2
    # r s = s r^(n-1)
    assert G.mul(r, s) == G.mul(s, G.power(r, n - 1))
    assert G.parse_word("r s") == G.mul(r, s)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_dicyclic_presentation(n):
    G = dicyclic_group(n)
    a, x = G.words["a"], G.words["x"]
    assert G.order == 4 * n
    assert G.orders[a] == 2 * n
    assert G.mul(x, x) == G.power(a, n)
    assert G.conj(x, a) == G.inv(a)
    assert len([g for g in range(G.order) if G.orders[g] == 2]) == 1


def test_alternating_and_symmetric_orders():
    assert alternating_group(4).order == 12
    assert alternating_group(5).order == 60
    assert symmetric_group(4).order == 24


def test_direct_product():
    P = direct_product([symmetric_group(3), make_abelian_group([2])])
    assert P.order == 12 and not P.is_abelian
    Q = parse_group_spec("Z2 x Z4")
    assert Q.kind == "abelian" and Q.invariants == (2, 4)
    assert exponent(parse_group_spec("Z2 x Z8")) == 8


@pytest.mark.parametrize("text,name,order", [
    ("Z2xZ4", "Z2 x Z4", 8), (" z2 X z2 ", "Z2 x Z2", 4), ("S4", "S4", 24),
    ("a5", "A5", 60), ("D6", "D6", 12), ("dic3", "Dic3", 12), ("D4 x Z2", "D4 x Z2", 16),
])
def test_parse_group_spec(text, name, order):
    G = parse_group_spec(text)
    assert G.name == name and G.order == order


@pytest.mark.parametrize("text,pos", [("Z2yZ4", 2), ("Q8", 0), ("", None), ("Z2x", 3)])
def test_parse_group_spec_errors(text, pos):
    with pytest.raises(GroupError) as exc:
        parse_group_spec(text)
    if pos is not None:
        assert f"position {pos}" in str(exc.value)


def test_exhaustive_axioms_small_catalog():
    for spec, G in nonabelian_catalog(16):
        t = G.table
        n = G.order
        for a, b, c in itertools.product(range(n), repeat=3):
            assert t[t[a][b]][c] == t[a][t[b][c]]
        for a in range(n):
            assert t[0][a] == a == t[a][0]
            assert t[a][G.inverse[a]] == 0 == t[G.inverse[a]][a]
            assert n % G.orders[a] == 0


def test_abelian_tables_commute():
    for inv_ in [(2, 2), (2, 4), (3, 9), (2, 2, 4)]:
        G = abelian_group(inv_)
        assert G.is_abelian
        assert all(G.table[a][b] == G.table[b][a] for a in range(G.order) for b in range(G.order))


def test_labels_round_trip():
    for spec in ["Z2 x Z8", "S4", "A5", "D6", "Dic3"]:
        G = parse_group_spec(spec)
        for x in range(G.order):
            assert G.parse_element(G.label(x)) == x


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["S4", "A5", "D6 x Z2", "Dic5", "A4 x Z2"]), st.data())
def test_random_products_associate_and_generate_consistently(spec, data):
    G = catalog_group(spec)
    xs = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=4))
    a, b, c = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inv(a)) == 0
    assert generates(G, xs) == (len(naive_span(G, xs)) == G.order)
