"""Sylow subgroups, normalizers, cores, fusion, cosets vs brute oracles."""

import random

import pytest

from lefschetz.group import PermGroup
from lefschetz.perm import compose, conjugate, identity, parse_perm, perm_order
from lefschetz.subgroups import (
    are_subgroups_conjugate,
    center,
    double_coset_elements,
    double_cosets,
    int_p_part,
    is_elementary_abelian,
    is_p_group,
    normalizer,
    omega1,
    p_core,
    right_coset_reps,
    subgroup_conjugating_element,
    subgroup_conjugation_orbit,
    subgroup_intersection,
    sylow_subgroup,
)


def sym(n):
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return PermGroup(n, gens, name=f"S{n}")


def mathieu12():
    g1 = parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", 12)
    g2 = parse_perm("(3,7,11,8)(4,10,5,6)", 12)
    g3 = parse_perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12)
    return PermGroup(12, [g1, g2, g3], name="M12")


def test_int_p_part():
    assert int_p_part(95040, 2) == 64
    assert int_p_part(95040, 3) == 27
    assert int_p_part(95040, 7) == 1


@pytest.mark.parametrize("n,p,order", [
    (4, 2, 8), (5, 2, 8), (5, 5, 5), (6, 3, 9), (7, 2, 16), (7, 3, 9), (7, 7, 7),
])
def test_sylow_symmetric(n, p, order):
    G = sym(n)
    P = sylow_subgroup(G, p)
    assert P.order == order
    assert is_p_group(P, p)
    assert P.is_subgroup_of(G)


def test_sylow_m12():
    G = mathieu12()
    assert sylow_subgroup(G, 2).order == 64
    assert sylow_subgroup(G, 3).order == 27
    assert sylow_subgroup(G, 5).order == 5
    assert sylow_subgroup(G, 11).order == 11


def test_center_and_omega1_quaternion_vs_dihedral():
    # D8 and Q8 as subgroups of S8 (regular representation for Q8)
    d8 = PermGroup(4, [parse_perm("(1,2,3,4)", 4), parse_perm("(1,3)", 4)], name="D8")
    assert center(d8).order == 2
    assert omega1(d8, 2).order == 8  # reflections generate D8
    i = parse_perm("(1,2,3,4)(5,6,7,8)", 8)
    j = parse_perm("(1,5,3,7)(2,8,4,6)", 8)
    q8 = PermGroup(8, [i, j], name="Q8")
    assert q8.order == 8
    assert center(q8).order == 2
    assert omega1(q8, 2).order == 2  # unique involution


def test_elementary_abelian_detection():
    v4 = PermGroup(4, [parse_perm("(1,2)(3,4)", 4), parse_perm("(1,3)(2,4)", 4)])
    assert is_elementary_abelian(v4, 2)
    c4 = PermGroup(4, [parse_perm("(1,2,3,4)", 4)])
    assert not is_elementary_abelian(c4, 2)
    assert is_elementary_abelian(PermGroup(4, []), 2)


def test_subgroup_intersection():
    G = sym(5)
    A = G.subgroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3,4)", 5)])  # S4 on 1-4
    B = G.subgroup([parse_perm("(2,3)", 5), parse_perm("(2,3,4,5)", 5)])  # S4 on 2-5
    I = subgroup_intersection(A, B)
    assert I.order == 6  # S3 on {2,3,4}


def brute_normalizer_order(G, H):
    hset = H.element_set()
    return sum(1 for g in G.elements()
               if all(conjugate(h, g) in hset for h in H.generators))


@pytest.mark.parametrize("seed", range(8))
def test_normalizer_strategies_match_brute(seed):
    rng = random.Random(400 + seed)
    n = rng.randrange(5, 8)
    G = sym(n)
    H = G.subgroup([G.random_element(rng) for _ in range(rng.randrange(1, 3))])
    if H.order > 2500:
        return
    expected = brute_normalizer_order(G, H)
    for strat in ("auto", "orbit", "backtrack"):
        assert normalizer(G, H, strategy=strat).order == expected


def test_sylow_normalizers_m12():
    G = mathieu12()
    P3 = sylow_subgroup(G, 3)
    N3 = normalizer(G, P3)
    assert N3.order == 108  # 3^3 : 4, index 880
    P2 = sylow_subgroup(G, 2)
    N2 = normalizer(G, P2)
    assert N2.order == 64  # Sylow 2 is self-normalizing in M12


def test_p_core():
    s4 = sym(4)
    assert p_core(s4, 2).order == 4  # the Klein four-group
    assert p_core(s4, 3).order == 1
    assert p_core(mathieu12(), 2).order == 1  # M12 is simple
    d8 = PermGroup(4, [parse_perm("(1,2,3,4)", 4), parse_perm("(1,3)", 4)])
    assert p_core(d8, 2).order == 8


def test_subgroup_conjugacy_s6():
    G = sym(6)
    # two conjugate copies of S3 (point stabilizer pattern)
    A = G.subgroup([parse_perm("(1,2)", 6), parse_perm("(1,2,3)", 6)])
    B = G.subgroup([parse_perm("(4,5)", 6), parse_perm("(4,5,6)", 6)])
    g = subgroup_conjugating_element(G, A, B)
    assert g is not None
    assert A.conjugated(g).element_set() == B.element_set()
    # transitive S3 <(14)(25)(36)-type> is NOT conjugate to the point one:
    # <(1,2,3)(4,5,6), (1,4)(2,6)(3,5)> acts transitively
    C = G.subgroup([parse_perm("(1,2,3)(4,5,6)", 6), parse_perm("(1,4)(2,6)(3,5)", 6)])
    assert C.order == 6
    assert subgroup_conjugating_element(G, A, C) is None
    assert not are_subgroups_conjugate(G, A, C)
    assert are_subgroups_conjugate(G, A, B)


def test_subgroup_orbit_stabilizer_counts():
    G = sym(5)
    H = G.subgroup([parse_perm("(1,2)", 5)])
    N, orbit = subgroup_conjugation_orbit(G, H)
    assert orbit == 10  # transpositions
    assert N.order == 12  # <(1,2)> x S3 on {3,4,5}
    assert N.order * orbit == G.order


def test_right_cosets_and_double_cosets():
    G = sym(5)
    H = G.subgroup([parse_perm("(1,2)", 5), parse_perm("(1,2,3,4)", 5)])  # S4
    reps = right_coset_reps(G, H)
    assert len(reps) == 5
    dcs = double_cosets(G, H, H)
    assert sum(size for _, size in dcs) == 120
    assert len(dcs) == 2  # S4\S5/S4: identity coset + the rest
    sizes = sorted(size for _, size in dcs)
    assert sizes == [24, 96]
    # element listing agrees with the size formula
    for rep, size in dcs:
        assert len(double_coset_elements(H, rep, H)) == size


def test_double_cosets_match_brute_random():
    rng = random.Random(17)
    G = sym(5)
    H = G.subgroup([parse_perm("(1,2)", 5), parse_perm("(3,4,5)", 5)])
    K = G.subgroup([parse_perm("(1,2,3)", 5)])
    dcs = double_cosets(G, H, K)
    assert sum(s for _, s in dcs) == 120
    # brute force the partition
    seen = {}
    for g in G.elements():
        found = None
        for rep, _ in dcs:
            if g in double_coset_elements(H, rep, K):
                found = rep
                break
        assert found is not None
        seen[found] = seen.get(found, 0) + 1
    assert sorted(seen.values()) == sorted(s for _, s in dcs)
