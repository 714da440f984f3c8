"""Character table engine: exact tables, labels, induction, decomposition."""

from fractions import Fraction

import pytest

from lefschetz.chartab import (
    CharacterTable,
    character_table,
    fusion_map,
    induce_values,
    restrict_values,
    trivial_character_values,
)
from lefschetz.classes import conjugacy_classes
from lefschetz.cyclotomic import Cyc, parse_cyc
from lefschetz.group import PermGroup
from lefschetz.perm import parse_perm


def sym(n: int) -> PermGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return PermGroup(n, gens, name=f"S{n}")


def alt(n: int) -> PermGroup:
    c3 = tuple([1, 2, 0] + list(range(3, n)))
    if n % 2 == 1:
        big = tuple(list(range(1, n)) + [0])
    else:
        big = tuple([0] + list(range(2, n)) + [1])
    return PermGroup(n, [c3, big], name=f"A{n}")


def mathieu12() -> PermGroup:
    a = parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", degree=12)
    b = parse_perm("(3,7,11,8)(4,10,5,6)", degree=12)
    c = parse_perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", degree=12)
    return PermGroup(12, [a, b, c], name="M12")


def test_s3_table() -> None:
    T = character_table(sym(3))
    assert T.degrees == [1, 1, 2]
    rows = {c.label: [str(v) for v in c.values] for c in T}
    assert rows == {
        "1a": ["1", "1", "1"],
        "1b": ["1", "-1", "1"],
        "2a": ["2", "0", "-1"],
    }


def test_s4_table_and_labels() -> None:
    T = character_table(sym(4))
    assert T.degrees == [1, 1, 2, 3, 3]
    # class order: 1a, 2a (double transpositions), 2b (transpositions), 3a, 4a
    assert [c.label for c in T.classes] == ["1a", "2a", "2b", "3a", "4a"]
    std = T.by_label("3a")
    assert [str(v) for v in std.values] == ["3", "-1", "1", "0", "-1"]
    sgn = T.by_label("1b")
    assert [str(v) for v in sgn.values] == ["1", "1", "-1", "1", "-1"]


def test_a5_golden_entries() -> None:
    T = character_table(alt(5))
    assert T.degrees == [1, 3, 3, 4, 5]
    c3a = T.by_label("3a")
    golden = parse_cyc("-E(5)^2-E(5)^3")  # (1+sqrt 5)/2
    assert golden in c3a.values
    assert golden.galois(2) in c3a.values  # its conjugate (1-sqrt 5)/2
    T.verify()


def test_cyclic_group_all_linear() -> None:
    n = 12
    G = PermGroup(n, [tuple(list(range(1, n)) + [0])], name="C12")
    T = character_table(G)
    assert T.degrees == [1] * 12
    # faithful linear characters take a primitive 12th root somewhere
    assert any(v.conductor == 12 for c in T for v in c.values)


def test_dihedral_and_quaternion() -> None:
    d8 = PermGroup(4, [parse_perm("(1,2,3,4)", degree=4),
                       parse_perm("(1,3)", degree=4)], name="D8")
    Td = character_table(d8)
    assert Td.degrees == [1, 1, 1, 1, 2]
    i8 = parse_perm("(1,2,3,4)(5,8,7,6)", degree=8)
    j8 = parse_perm("(1,5,3,7)(2,6,4,8)", degree=8)
    q8 = PermGroup(8, [i8, j8], name="Q8")
    Tq = character_table(q8)
    assert Tq.degrees == [1, 1, 1, 1, 2]
    two = Tq.by_label("2a")
    # the 2-dimensional character of Q8 is -2 on the central involution
    assert Cyc(-2) in two.values


def test_a7_labels_and_pins() -> None:
    T = character_table(alt(7))
    assert [c.label for c in T] == [
        "1a", "6a", "10a", "10b", "14a", "14b", "15a", "21a", "35a"]
    cl = T.classes
    i3a = cl.by_label("3a").index
    i3b = cl.by_label("3b").index
    assert cl.by_label("3a").size == 70 and cl.by_label("3b").size == 280
    assert T.by_label("14a").values[i3a] == Cyc(2)
    assert T.by_label("14a").values[i3b] == Cyc(-1)
    assert T.by_label("14b").values[i3a] == Cyc(-1)
    assert T.by_label("14b").values[i3b] == Cyc(2)
    i7a = cl.by_label("7a").index
    v = T.by_label("10a").values[i7a]
    assert not v.is_rational() and v.conductor == 7
    assert v + v.conjugate() == Cyc(-1)


def test_s7_pins() -> None:
    T = character_table(sym(7))
    assert sorted(T.degrees) == [1, 1, 6, 6, 14, 14, 14, 14, 15, 15, 20,
                                 21, 21, 35, 35]
    cl = T.classes
    assert cl.by_label("2a").size == 21  # transpositions
    i2a = cl.by_label("2a").index
    assert T.by_label("15a").values[i2a] == Cyc(5)
    assert T.by_label("21a").values[i2a] == Cyc(1)


def test_m11_degrees() -> None:
    a = parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", degree=11)
    b = parse_perm("(3,7,11,8)(4,10,5,6)", degree=11)
    T = character_table(PermGroup(11, [a, b], name="M11"))
    assert T.degrees == [1, 10, 10, 10, 11, 16, 16, 44, 45, 55]


def test_m12_table() -> None:
    T = character_table(mathieu12())
    assert T.degrees == [1, 11, 11, 16, 16, 45, 54, 55, 55, 55, 66, 99,
                         120, 144, 176]
    cl = T.classes
    i2a = cl.by_label("2a").index
    i2b = cl.by_label("2b").index
    assert T.by_label("11a").values[i2a] == Cyc(-1)
    assert T.by_label("11a").values[i2b] == Cyc(3)
    i11a = cl.by_label("11a").index
    v = T.by_label("16a").values[i11a]
    assert v.conductor == 11 and v + v.conjugate() == Cyc(-1)
    assert [str(T.by_label("144a").values[k]) for k in range(3)] == \
        ["144", "4", "0"]


def test_determinism() -> None:
    t1 = character_table(sym(5))
    t2 = character_table(sym(5))
    assert [c.label for c in t1] == [c.label for c in t2]
    assert all(a.values == b.values for a, b in zip(t1, t2))


def test_inner_products_orthonormal() -> None:
    T = character_table(sym(5))
    for i, chi in enumerate(T):
        for j, psi in enumerate(T):
            want = Fraction(1 if i == j else 0)
            assert T.inner_product(chi.values, psi.values) == want


def test_decompose_regular_character() -> None:
    T = character_table(sym(4))
    reg = [Cyc(0) for _ in T.classes]
    reg[0] = Cyc(24)
    assert T.decompose(reg) == {c.label: c.degree for c in T}


def test_induced_trivial_is_permutation_character() -> None:
    G = sym(5)
    H = G.subgroup([parse_perm("(1,2)", degree=5),
                    parse_perm("(1,2,3,4)", degree=5)], name="S4")
    assert H.order == 24
    TG = character_table(G)
    CH = conjugacy_classes(H)
    ind = induce_values(CH, trivial_character_values(CH), TG.classes)
    # permutation character of the natural action: fixed points
    for c in TG.classes:
        fixed = sum(1 for p in range(5) if c.rep[p] == p)
        assert ind[c.index] == Cyc(fixed)
    assert TG.decompose(ind) == {"1a": 1, "4a": 1}


def test_frobenius_reciprocity() -> None:
    G = sym(5)
    H = G.subgroup([parse_perm("(1,2,3,4,5)", degree=5),
                    parse_perm("(2,3,5,4)", degree=5)], name="F20")
    assert H.order == 20
    TG = character_table(G)
    TH = character_table(conjugacy_classes(H))
    fus = fusion_map(TH.classes, TG.classes)
    for psi in TH:
        ind = induce_values(TH.classes, psi.values, TG.classes, fus)
        assert ind[0] == Cyc(psi.degree * G.order // H.order)
        for chi in TG:
            res = restrict_values(chi.values, TH.classes, TG.classes, fus)
            lhs = TG.inner_product(ind, chi.values)
            rhs = TH.inner_product(res, psi.values)
            assert lhs == rhs


def test_restriction_of_irreducible_decomposes() -> None:
    G = sym(4)
    H = G.subgroup([parse_perm("(1,2,3)", degree=4),
                    parse_perm("(1,2)", degree=4)], name="S3")
    TG = character_table(G)
    TH = character_table(conjugacy_classes(H))
    res = restrict_values(TG.by_label("3a").values, TH.classes, TG.classes)
    assert TH.decompose(res) == {"1a": 1, "2a": 1}


def test_verify_rejects_corruption() -> None:
    T = character_table(sym(3))
    bad = [Character_like for Character_like in T.irreducibles]
    from lefschetz.chartab import Character
    broken = Character(label="2a", degree=2,
                       values=(Cyc(2), Cyc(1), Cyc(-1)))
    corrupt = CharacterTable(T.classes, [bad[0], bad[1], broken])
    with pytest.raises(Exception):
        corrupt.verify()
