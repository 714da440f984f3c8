"""Stabilizer chain engine tests against brute-force closures."""

from __future__ import annotations

import random
from math import factorial

import pytest

from lefschetz.errors import ResourceBoundExceeded
from lefschetz.group import PermGroup, generic_orbit
from lefschetz.perm import compose, identity, inverse, parse_perm


def brute_closure(degree, gens):
    seen = {identity(degree)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = compose(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
        frontier = nxt
    return seen


def sym_gens(n):
    return [parse_perm("(1,2)", n), tuple(list(range(1, n)) + [0])]


def test_symmetric_orders():
    for n in range(1, 8):
        G = PermGroup(n, sym_gens(n)) if n > 1 else PermGroup(1, [])
        assert G.order == factorial(n)


def test_order_vs_brute_closure_small():
    rng = random.Random(1)
    for trial in range(30):
        n = rng.randint(2, 7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            img = list(range(n))
            rng.shuffle(img)
            gens.append(tuple(img))
        G = PermGroup(n, gens)
        assert G.order == len(brute_closure(n, gens))


def test_membership():
    n = 6
    A6_gens = [parse_perm("(1,2,3)", n), parse_perm("(2,3,4,5,6)", n)]
    G = PermGroup(n, A6_gens)
    assert G.order == 360
    assert parse_perm("(1,2,3)", n) in G
    assert parse_perm("(1,2)", n) not in G
    assert identity(n) in G


def test_elements_enumeration_exact():
    G = PermGroup(4, sym_gens(4))
    elems = list(G.elements())
    assert len(elems) == 24
    assert len(set(elems)) == 24
    assert set(elems) == brute_closure(4, G.generators)


def test_elements_bound():
    G = PermGroup(7, sym_gens(7))
    with pytest.raises(ResourceBoundExceeded):
        list(G.elements(100))


def test_random_element_uniformish_and_member():
    G = PermGroup(5, sym_gens(5))
    rng = random.Random(7)
    seen = set()
    for _ in range(600):
        g = G.random_element(rng)
        assert g in G
        seen.add(g)
    assert len(seen) > 100  # 120 elements; uniform sampling covers most


def test_determinism_same_input_same_chain():
    gens = sym_gens(6)
    G1 = PermGroup(6, gens)
    G2 = PermGroup(6, gens)
    assert G1.base == G2.base
    assert list(G1.elements()) == list(G2.elements())


def test_normal_closure_and_derived():
    S4 = PermGroup(4, sym_gens(4))
    A4 = S4.derived_subgroup()
    assert A4.order == 12
    V4 = A4.derived_subgroup()
    assert V4.order == 4
    # normal closure of a transposition is all of S4
    assert S4.normal_closure([parse_perm("(1,2)", 4)]).order == 24
    assert V4.is_normal_in(S4)
    assert not PermGroup(4, [parse_perm("(1,2)", 4)]).is_normal_in(S4)


def test_conjugated_subgroup():
    S4 = PermGroup(4, sym_gens(4))
    H = S4.subgroup([parse_perm("(1,2)", 4)])
    g = parse_perm("(1,3)", 4)
    Hg = H.conjugated(g)
    assert parse_perm("(2,3)", 4) in Hg


def test_minimal_coset_rep_is_canonical():
    rng = random.Random(5)
    S5 = PermGroup(5, sym_gens(5))
    H = S5.subgroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3)", 5)])  # S3 x 1
    elems_H = list(H.elements())
    for _ in range(40):
        g = S5.random_element(rng)
        h = elems_H[rng.randrange(len(elems_H))]
        r1 = H.minimal_coset_rep(g)
        r2 = H.minimal_coset_rep(compose(h, g))
        assert r1 == r2
        assert r1 == min(compose(x, g) for x in elems_H)
    # different cosets get different keys
    keys = {H.minimal_coset_rep(g) for g in S5.elements()}
    assert len(keys) == S5.order // H.order


def test_transporter_and_orbit():
    G = PermGroup(7, [parse_perm("(1,2,3,4,5,6,7)", 7)])
    assert sorted(G.orbit_of_point(0)) == list(range(7))
    t = G.transporter_to_point(0, 4)
    assert t is not None and t[0] == 4


def test_generic_orbit_limit():
    act = [lambda x: (x + 1) % 50]
    orb = generic_orbit(0, act)
    assert len(orb) == 50
    with pytest.raises(ResourceBoundExceeded):
        generic_orbit(0, act, limit=10)


def test_mathieu12_order_and_base():
    # classical generators: L2(11) on 11 points extended to 12
    g1 = parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", 12)
    g2 = parse_perm("(3,7,11,8)(4,10,5,6)", 12)
    g3 = parse_perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12)
    M12 = PermGroup(12, [g1, g2, g3], name="M12")
    assert M12.order == 95040
