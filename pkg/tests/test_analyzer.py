"""Lefschetz characters, Euler cross-checks, block components, and the
double-coset / orbit-counting projectivity screens."""

from functools import cache

import pytest

from lefschetz.analyzer import (
    LefschetzCharacter,
    block_distribution,
    double_coset_bound,
    double_cosets,
    euler_crosscheck,
    format_multiplicities,
    landrock_test,
    lefschetz_character,
    permutation_character,
    projective_degree_screen,
    projective_part_test,
    vertex_report,
)
from lefschetz.blocks import p_blocks
from lefschetz.chartab import character_table
from lefschetz.classes import conjugacy_classes
from lefschetz.collection import build_collection
from lefschetz.complexes import order_complex
from lefschetz.errors import IncompleteSearch, ValidationError
from lefschetz.group import PermGroup
from lefschetz.perm import parse_perm
from lefschetz.subgroups import sylow_subgroup


def sym(n):
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return PermGroup(n, gens, name=f"S{n}")


@cache
def s4_data():
    cl = conjugacy_classes(sym(4))
    return cl, character_table(cl)


@cache
def a5_data():
    G = PermGroup(5, [(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)], name="A5")
    cl = conjugacy_classes(G)
    return cl, character_table(cl)


@cache
def mathieu12():
    g1 = parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", 12)
    g2 = parse_perm("(3,7,11,8)(4,10,5,6)", 12)
    g3 = parse_perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12)
    G = PermGroup(12, [g1, g2, g3], name="M12")
    cl = conjugacy_classes(G)
    return cl, character_table(cl)


@cache
def m12_dbouc_lefschetz():
    cl, tab = mathieu12()
    col = build_collection(cl, 3, "distinguished-bouc")
    orb = order_complex(col, "orbit-level")
    return col, orb, lefschetz_character(orb, tab)


# ---------------------------------------------------------------------------
# the character itself


def test_empty_complex_character():
    cl, tab = s4_data()
    col = build_collection(cl, 7, "quillen")
    cx = order_complex(col)
    L = lefschetz_character(cx, tab)
    assert L.degree == -1
    assert L.values == tuple([-1] * len(cl))
    assert dict(L.multiplicities) == {"1a": -1}
    assert euler_crosscheck(L, cx).passed


def test_s4_bouc_character_vanishes():
    cl, tab = s4_data()
    cx = order_complex(build_collection(cl, 2, "bouc"), "orbit-level")
    L = lefschetz_character(cx, tab)
    assert L.degree == 0
    assert L.values == tuple([0] * len(cl))
    assert L.multiplicities == ()
    assert str(L) == "0"
    assert euler_crosscheck(L, cx).passed


def test_a5_quillen_character_is_steinberg():
    cl, tab = a5_data()
    cx = order_complex(build_collection(cl, 2, "quillen"), "orbit-level")
    L = lefschetz_character(cx, tab)
    assert L.degree == 4
    assert dict(L.multiplicities) == {"4a": 1}
    test = projective_part_test(cl, L.values, 2)
    assert test.passed and test.witness is None
    assert euler_crosscheck(L, cx).passed


def test_full_and_orbit_complexes_agree():
    cl, tab = a5_data()
    col = build_collection(cl, 2, "quillen")
    L1 = lefschetz_character(order_complex(col), tab)
    L2 = lefschetz_character(order_complex(col, "orbit-level"), tab)
    assert L1.values == L2.values
    assert L1.multiplicities == L2.multiplicities


def test_character_requires_matching_table():
    cl, tab = s4_data()
    a5cl, a5tab = a5_data()
    cx = order_complex(build_collection(cl, 2, "bouc"))
    with pytest.raises(ValidationError):
        lefschetz_character(cx, a5tab)


def test_crosscheck_rejects_tampered_values():
    cl, tab = a5_data()
    cx = order_complex(build_collection(cl, 2, "quillen"), "orbit-level")
    L = lefschetz_character(cx, tab)
    wrong = list(L.values)
    wrong[cl.by_label("3a").index] += 1
    bad = LefschetzCharacter(
        table=L.table, values=tuple(wrong), multiplicities=L.multiplicities,
        degree=L.degree, prime=L.prime, kind=L.kind,
        orbit_summary=L.orbit_summary)
    with pytest.raises(IncompleteSearch, match="3a"):
        euler_crosscheck(bad, cx)


def test_permutation_character_natural_action():
    cl, _ = s4_data()
    clH = conjugacy_classes(sym(4).subgroup(
        [(1, 2, 0, 3), (1, 0, 2, 3)]))  # point stabilizer S3
    pi = permutation_character(clH, cl)
    assert list(pi) == [4, 0, 2, 1, 0]


def test_format_multiplicities():
    assert format_multiplicities([]) == "0"
    assert format_multiplicities([("1a", 1)]) == "1a"
    assert format_multiplicities([("15a", -1), ("21a", -1)]) == "-15a - 21a"
    assert format_multiplicities([("7a", 2), ("9a", -3)]) == "2*7a - 3*9a"


# ---------------------------------------------------------------------------
# vanishing and block components


def test_projective_part_test_basics():
    cl, _ = s4_data()
    regular = [24, 0, 0, 0, 0]
    assert projective_part_test(cl, regular, 2).passed
    trivial = [1, 1, 1, 1, 1]
    t = projective_part_test(cl, trivial, 2)
    assert not t.passed and t.witness == "2a"


def test_block_distribution_a5():
    cl, tab = a5_data()
    cx = order_complex(build_collection(cl, 2, "quillen"), "orbit-level")
    L = lefschetz_character(cx, tab)
    rep = block_distribution(L, p_blocks(tab, 2))
    live = rep.nonzero_components()
    assert len(live) == 1
    assert live[0].defect == 0
    assert dict(live[0].multiplicities) == {"4a": 1}
    assert live[0].projective_compatible
    zero = [c for c in rep.components if not c.multiplicities]
    assert all(c.degree == 0 for c in zero)


def test_block_distribution_rejects_other_table():
    cl, tab = a5_data()
    s4cl, s4tab = s4_data()
    cx = order_complex(build_collection(cl, 2, "quillen"), "orbit-level")
    L = lefschetz_character(cx, tab)
    with pytest.raises(ValidationError):
        block_distribution(L, p_blocks(s4tab, 2))


# ---------------------------------------------------------------------------
# double cosets and screens


def test_double_cosets_s4_sylow():
    G = sym(4)
    cl, _ = s4_data()
    H = sylow_subgroup(G, 2)
    dcs = double_cosets(G, H)
    assert sorted((dc.size, dc.intersection_order) for dc in dcs) == \
        [(8, 8), (16, 4)]
    bound = double_coset_bound(G, H, 2)
    assert bound.total == 2 and bound.d == 0
    assert "no projective summands" in bound.statement


def test_double_cosets_whole_group():
    G = sym(4)
    dcs = double_cosets(G, G)
    assert len(dcs) == 1 and dcs[0].intersection_order == 24
    assert double_coset_bound(G, G, 5).d == 1


def test_double_cosets_two_subgroups():
    G = sym(4)
    H = sylow_subgroup(G, 2)
    K = G.subgroup([(1, 2, 0, 3), (1, 0, 2, 3)])
    dcs = double_cosets(G, H, K)
    assert sum(dc.size for dc in dcs) == 24
    assert all(dc.intersection_order is None for dc in dcs)


def test_degree_screen():
    scr = projective_degree_screen(64, 2, [1, 10, 16, 16, 44, 144])
    assert scr.sylow_part == 64 and scr.survivors == (144,)
    scr = projective_degree_screen(sym(3), 5, [1, 2, 3])
    assert scr.sylow_part == 1 and scr.survivors == (1, 2, 3)
    with pytest.raises(ValidationError):
        projective_degree_screen(64, 2, [])


def test_landrock_vacuous_cases():
    cl3 = conjugacy_classes(sym(3))
    res = landrock_test(cl3, 3)        # normal Sylow
    assert res.vacuous and res.projective_free
    cl4, _ = s4_data()
    res = landrock_test(cl4, 2)        # Sylow intersections are never trivial
    assert res.vacuous and res.projective_free
    clp = conjugacy_classes(PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)]))
    res = landrock_test(clp, 2)        # G itself a 2-group
    assert res.vacuous and res.projective_free


def test_landrock_detects_projective_summand():
    # Ind_{V4}^{A5}(1) contains the projective Steinberg module once
    cl, _ = a5_data()
    res = landrock_test(cl, 2)
    assert not res.vacuous
    assert res.trivial_cosets > 0
    assert not res.projective_free
    assert res.witness is not None and res.witness.orbits % 2 == 1


# ---------------------------------------------------------------------------
# M12 pins


def test_m12_p3_lefschetz_character():
    cl, tab = mathieu12()
    _, orb, L = m12_dbouc_lefschetz()
    assert L.degree == -441
    assert dict(L.multiplicities) == \
        {"55a": -1, "66a": -1, "144a": -1, "176a": -1}
    assert L.value_at("3b") == 3
    assert L.value_at("3a") == 0
    assert L.value_at("2b") == -9


def test_m12_p3_euler_crosscheck():
    _, orb, L = m12_dbouc_lefschetz()
    chk = euler_crosscheck(L, orb)
    assert chk.passed and len(chk.rows) == 15


def test_m12_p3_block_split():
    cl, tab = mathieu12()
    _, _, L = m12_dbouc_lefschetz()
    rep = block_distribution(L, p_blocks(tab, 3))
    live = rep.nonzero_components()
    assert len(live) == 2
    principal = next(c for c in live if c.principal)
    cyclic = next(c for c in live if not c.principal)
    # the principal-block part vanishes on 3-singular classes (projective);
    # the defect-1 component carries the nonprojective summand
    assert principal.projective_compatible
    assert dict(cyclic.multiplicities) == {"144a": -1}
    assert cyclic.defect == 1
    assert not cyclic.projective_compatible


def test_m12_p3_vertex_report():
    col, orb, _ = m12_dbouc_lefschetz()
    rep = vertex_report(order_complex(col), mathieu12()[0])
    assert rep.kind == "distinguished-bouc"
    assert len(rep.rows) == 1
    row = rep.rows[0]
    assert row.order == 3 and row.components == 4
    assert set(row.component_sizes) == {(3, 2)}
    assert not row.excluded
    assert "candidate" in row.conclusion


def test_m12_p2_landrock_witnesses_order_11():
    cl, _ = mathieu12()
    res = landrock_test(cl, 2)
    assert not res.projective_free
    assert res.trivial_cosets == 12
    eleven = {(c.section_label, c.orbits) for c in res.counts
              if c.section_label in ("11a", "11b")}
    # some trivial-intersection double coset meets each order-11 section in
    # an odd number (5) of Sylow orbits, defeating projective-freeness
    assert ("11a", 5) in eleven and ("11b", 5) in eleven
