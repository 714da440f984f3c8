"""Block partitions, class multiplication coefficients, closure checks."""

import pytest

from lefschetz.blocks import (
    IdealReducer,
    class_mult_coefficient,
    closed_class_check,
    nu,
    p_blocks,
)
from lefschetz.chartab import character_table
from lefschetz.classes import ClassData, conjugacy_classes
from lefschetz.cyclotomic import Cyc
from lefschetz.group import PermGroup
from lefschetz.perm import compose, from_bytes, parse_perm


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


def test_nu() -> None:
    assert nu(2, 24) == 3
    assert nu(3, 24) == 1
    assert nu(5, 24) == 0
    with pytest.raises(ValueError):
        nu(2, 0)


def test_ideal_reducer_is_ring_homomorphism() -> None:
    red = IdealReducer(2, 15)
    xs = [Cyc(3), Cyc.root_of_unity(3, 1), Cyc.root_of_unity(5, 2),
          Cyc.root_of_unity(15, 7) + Cyc(1), Cyc.root_of_unity(5, 1) * 2]
    for x in xs:
        for y in xs:
            sx, sy = red.reduce(x), red.reduce(y)
            assert red.reduce(x + y) == tuple(
                (a + b) % 2 for a, b in zip(sx, sy))
    # multiplicativity on roots of unity: reduce(z^a) depends only on exponent
    z = Cyc.root_of_unity(15, 1)
    acc = Cyc(1)
    for k in range(1, 15):
        acc = acc * z
        assert red.reduce(acc) == red.reduce(Cyc.root_of_unity(15, k % 15))
    # p-power roots of unity collapse to 1
    red3 = IdealReducer(3, 4)
    assert red3.reduce(Cyc.root_of_unity(9, 4)) == red3.reduce(Cyc(1))


def test_a7_blocks_at_7() -> None:
    T = character_table(alt(7))
    B = p_blocks(T, 7)
    assert len(B.blocks) == 5
    assert B.defects == (1, 0, 0, 0, 0)
    assert B.labels[0] == ("1a", "6a", "10a", "10b", "15a")
    assert {lbls for lbls in B.labels[1:]} == {("14a",), ("14b",),
                                               ("21a",), ("35a",)}


def test_coprime_prime_gives_singletons() -> None:
    T = character_table(alt(5))
    B = p_blocks(T, 7)
    assert all(len(b) == 1 for b in B.blocks)
    assert set(B.defects) == {0}
    assert B.labels[0] == ("1a",)


def test_s4_blocks() -> None:
    T = character_table(sym(4))
    B2 = p_blocks(T, 2)
    assert len(B2.blocks) == 1 and B2.defects == (3,)
    B3 = p_blocks(T, 3)
    assert len(B3.blocks) == 3
    assert B3.defects[0] == 1
    assert sorted(B3.labels[1:]) == [("3a",), ("3b",)]


def test_xi_identity_and_symmetry() -> None:
    T = character_table(alt(7))
    # identity class times K_j meets class k=j exactly once per element pair
    assert class_mult_coefficient(T, 0, 2, 2) == 1
    assert class_mult_coefficient(T, 0, 5, 5) == 1
    assert class_mult_coefficient(T, 0, 2, 3) == 0
    for i in range(3):
        for j in range(3):
            for k in range(4):
                assert class_mult_coefficient(T, i, j, k) == \
                    class_mult_coefficient(T, j, i, k)


def test_xi_matches_brute_force_on_s4() -> None:
    T = character_table(sym(4))
    cl = T.classes
    members: dict[int, list] = {}
    for key, idx in cl.element_to_class.items():
        members.setdefault(idx, []).append(from_bytes(key))
    for i in range(len(cl)):
        for j in range(len(cl)):
            for k in range(len(cl)):
                zk = cl[k].rep
                brute = sum(1 for x in members[i] for y in members[j]
                            if compose(x, y) == zk)
                assert class_mult_coefficient(T, i, j, k) == brute


def test_a5_involution_class_closed() -> None:
    cl = conjugacy_classes(alt(5))
    T = character_table(cl)
    i = cl.by_label("2a").index
    r = closed_class_check(cl, [i], table=T)
    assert r.closed is True and r.closure == (i,)
    assert r.xi_certificate is True


def test_m12_two_central_class_closed() -> None:
    G = mathieu12()
    cl = conjugacy_classes(G)
    T = character_table(cl)
    # the 2-central class is 2b: its centralizer order 192 holds a Sylow 2
    assert G.order // cl.by_label("2b").size == 192
    i2b = cl.by_label("2b").index
    r = closed_class_check(cl, [i2b], table=T)
    assert r.closed is True and r.closure == (i2b,)
    # the non-central involution class is not closed: products reach 2b
    i2a = cl.by_label("2a").index
    r2 = closed_class_check(cl, [i2a], table=T)
    assert r2.closed is False
    assert r2.closure == tuple(sorted([i2a, i2b]))
    assert r2.method == "enumeration"


def test_closure_without_table_by_enumeration() -> None:
    cl = conjugacy_classes(alt(5))
    i = cl.by_label("2a").index
    r = closed_class_check(cl, [i])
    assert r.closed is True and r.method == "enumeration"
    assert r.xi_certificate is None


def test_table_only_indeterminate() -> None:
    G = mathieu12()
    cl = conjugacy_classes(G)
    T = character_table(cl)
    detached = ClassData(None, cl.classes, None)
    i2a = cl.by_label("2a").index
    r = closed_class_check(detached, [i2a], table=T)
    assert r.closed is None and r.closure is None
    assert r.method == "indeterminate-by-xi"
    assert r.xi_certificate is False and r.xi_failures


def test_closed_class_check_validation() -> None:
    cl = conjugacy_classes(sym(4))
    with pytest.raises(ValueError):
        closed_class_check(cl, [])
    i2 = cl.by_label("2a").index
    i3 = cl.by_label("3a").index
    with pytest.raises(ValueError):
        closed_class_check(cl, [i2, i3])
    i4 = cl.by_label("4a").index
    with pytest.raises(ValueError):
        closed_class_check(cl, [i4])


def test_principal_block_has_full_defect() -> None:
    for G, p in [(sym(5), 2), (sym(5), 3), (sym(5), 5), (alt(6), 3)]:
        T = character_table(G)
        B = p_blocks(T, p)
        assert B.defects[0] == nu(p, G.order)
        assert "1a" in B.labels[0]
        flat = sorted(i for b in B.blocks for i in b)
        assert flat == list(range(len(T.irreducibles)))
