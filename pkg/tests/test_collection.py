"""Collections of p-subgroups: predicates, flags, and named families."""

import pytest

from lefschetz.classes import conjugacy_classes
from lefschetz.collection import (
    build_collection,
    is_distinguished,
    is_p_centric,
    is_p_radical,
    p_central_classes,
)
from lefschetz.errors import ResourceBoundExceeded
from lefschetz.group import PermGroup
from lefschetz.perm import parse_perm
from lefschetz.subgroups import (
    p_subgroup_classes,
    subgroups_of_p_group,
    sylow_subgroup,
    are_subgroups_conjugate,
)


def sym(n: int) -> PermGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return PermGroup(n, gens, name=f"S{n}")


def alt(n: int) -> PermGroup:
    c3 = tuple([1, 2, 0] + list(range(3, n)))
    big = tuple(list(range(1, n)) + [0]) if n % 2 else \
        tuple([0] + list(range(2, n)) + [1])
    return PermGroup(n, [c3, big], name=f"A{n}")


def mathieu12() -> PermGroup:
    a = parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", degree=12)
    b = parse_perm("(3,7,11,8)(4,10,5,6)", degree=12)
    c = parse_perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", degree=12)
    return PermGroup(12, [a, b, c], name="M12")


def test_p_subgroup_classes_small() -> None:
    A4 = PermGroup(4, [parse_perm("(1,2,3)", degree=4),
                       parse_perm("(1,2)(3,4)", degree=4)], name="A4")
    assert [H.order for H in p_subgroup_classes(A4, 2)] == [2, 4]
    S4 = sym(4)
    assert [H.order for H in p_subgroup_classes(S4, 2)] == [2, 2, 4, 4, 4, 8]
    assert [H.order for H in p_subgroup_classes(S4, 3)] == [3]
    assert p_subgroup_classes(S4, 5) == []


def test_every_sylow_subgroup_hits_exactly_one_class() -> None:
    # exhaustive: each subgroup of the Sylow is conjugate to exactly one rep
    for G, p in [(sym(4), 2), (sym(5), 2), (alt(6), 3)]:
        S = sylow_subgroup(G, p)
        assert S.order <= 27 or p == 2
        reps = p_subgroup_classes(G, p)
        for key, gens in subgroups_of_p_group(S, p).items():
            H = G.subgroup(gens)
            hits = sum(1 for R in reps if are_subgroups_conjugate(G, H, R))
            assert hits == 1


def test_sylow_is_radical_centric_distinguished() -> None:
    G = sym(5)
    cl = conjugacy_classes(G)
    S = sylow_subgroup(G, 2)
    assert is_p_radical(G, S, 2)
    assert is_p_centric(G, S, 2)
    central = p_central_classes(cl, 2)
    assert is_distinguished(cl, central, S)


def test_predicate_validation() -> None:
    G = sym(4)
    T = G.subgroup([parse_perm("(1,2,3)", degree=4)])
    with pytest.raises(ValueError):
        is_p_radical(G, T, 2)  # not a 2-group
    trivial = G.subgroup([])
    with pytest.raises(ValueError):
        is_p_centric(G, trivial, 2)


def test_p_central_classes_trivial_prime() -> None:
    cl = conjugacy_classes(sym(4))
    pc = p_central_classes(cl, 5)
    assert pc.central_classes == frozenset() == pc.benson_classes


def test_s4_collections() -> None:
    cl = conjugacy_classes(sym(4))
    bouc = build_collection(cl, 2, "bouc")
    # the 2-radical subgroups of S4: the normal V4 and the Sylow D8
    assert [(m.order, m.orbit_size) for m in bouc.members] == [(4, 1), (8, 3)]
    quillen = build_collection(cl, 2, "quillen")
    assert [(m.order, m.orbit_size) for m in quillen.members] == \
        [(2, 6), (2, 3), (4, 3), (4, 1)]
    with pytest.raises(ValueError):
        build_collection(cl, 2, "nonsense")


def test_m12_p3_central_and_collections() -> None:
    cl = conjugacy_classes(mathieu12())
    pc = p_central_classes(cl, 3)
    assert [cl[i].label for i in sorted(pc.central_classes)] == ["3a"]
    assert [cl[i].label for i in sorted(pc.benson_classes)] == ["3a"]

    bouc = build_collection(cl, 3, "bouc")
    assert [(m.order, m.orbit_size) for m in bouc.members] == \
        [(3, 1320), (9, 220), (9, 220), (27, 880)]
    # <3B> is radical but not distinguished; the other three are
    dist = build_collection(cl, 3, "distinguished-bouc")
    assert [(m.order, m.orbit_size) for m in dist.members] == \
        [(9, 220), (9, 220), (27, 880)]
    assert dist.total_subgroups == 1320
    cr = build_collection(cl, 3, "centric-radical")
    assert [(m.order, m.orbit_size) for m in cr.members] == \
        [(9, 220), (9, 220), (27, 880)]


def test_m12_p3_radical_flags() -> None:
    G = mathieu12()
    cl = conjugacy_classes(G)
    reps = p_subgroup_classes(G, 3)
    assert [H.order for H in reps] == [3, 3, 9, 9, 9, 27]
    flags = [is_p_radical(G, H, 3) for H in reps]
    assert sum(flags) == 4
    # the two order-3 classes: <3A> (not radical), <3B> (radical)
    order3 = [H for H in reps if H.order == 3]
    central = p_central_classes(cl, 3)
    for H in order3:
        gen = next(g for g in H.generators if g != tuple(range(12)))
        label = cl[cl.identify(gen)].label
        if label == "3a":
            assert not is_p_radical(G, H, 3)
            assert is_distinguished(cl, central, H)
        else:
            assert label == "3b"
            assert is_p_radical(G, H, 3)
            assert not is_distinguished(cl, central, H)


def test_containments() -> None:
    # centric-radical <= distinguished-bouc <= bouc as orbit sets
    for G, p in [(mathieu12(), 3), (sym(5), 2), (sym(6), 3), (alt(6), 2)]:
        cl = conjugacy_classes(G)
        def keyset(kind: str) -> set:
            coll = build_collection(cl, p, kind)
            return {(m.order, m.orbit_size, m.normalizer_order,
                     tuple(sorted(m.subgroup.orbit_of_point(0))))
                    for m in coll.members}
        cr = keyset("centric-radical")
        db = keyset("distinguished-bouc")
        bc = keyset("bouc")
        assert cr <= db <= bc


def test_benson_members_all_central_elements() -> None:
    from lefschetz.perm import perm_order
    for G, p in [(mathieu12(), 3), (sym(5), 2)]:
        cl = conjugacy_classes(G)
        coll = build_collection(cl, p, "benson")
        pc = coll.central
        for m in coll.members:
            assert m.elementary_abelian
            for x in m.subgroup.elements(m.order):
                if perm_order(x) == p:
                    assert cl.identify(x) in pc.benson_classes


def test_flags_recomputed_agree() -> None:
    G = sym(6)
    cl = conjugacy_classes(G)
    coll = build_collection(cl, 2, "bouc")
    central = coll.central
    for m in coll.members:
        assert m.radical == is_p_radical(G, m.subgroup, 2)
        assert m.centric == is_p_centric(G, m.subgroup, 2)
        assert m.distinguished == is_distinguished(cl, central, m.subgroup)


def test_sylow_bound_resource_error() -> None:
    G = mathieu12()
    with pytest.raises(ResourceBoundExceeded):
        p_subgroup_classes(PermGroup(G.degree, G.generators, name="M12x"),
                           2, sylow_bound=32)
