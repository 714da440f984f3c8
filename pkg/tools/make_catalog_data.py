"""Generate the shipped .group and .moddata files under src/lefschetz/data/.

Each group is constructed from first principles (matrix actions on projective
points, or a classical Mobius-plus-cubing generating set for the large
Mathieu group), verified by exact order (and transitivity degree where that
pins the isomorphism type), and written with a provenance comment plus pinned
class labels so that ingestion re-validates the data.
"""

from __future__ import annotations

import sys
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lefschetz.classes import conjugacy_classes
from lefschetz.formats import ClassPin, GroupFile, serialize_group_file
from lefschetz.group import PermGroup

DATA = Path(__file__).resolve().parents[1] / "src" / "lefschetz" / "data"


def write_group(name: str, degree: int, gens, provenance: str,
                *, expect_order: int, pin_classes: bool = True) -> PermGroup:
    G = PermGroup(degree, list(gens), name=name)
    assert G.order == expect_order, (name, G.order, expect_order)
    pins = ()
    if pin_classes:
        cl = conjugacy_classes(G)
        pins = tuple(ClassPin(c.label, c.element_order, c.size) for c in cl)
    gf = GroupFile(name=name, degree=degree, generators=tuple(gens),
                   class_pins=pins, provenance=provenance)
    out = DATA / f"{name}.group"
    out.write_text(serialize_group_file(gf), encoding="utf-8")
    print(f"wrote {out.name}: order {G.order}, {len(pins)} pinned classes")
    return G


# ---------------------------------------------------------------------------
# projective planes over small prime fields


def pg2_points(q: int) -> list[tuple[int, int, int]]:
    """Points of PG(2, q), canonical reps (first nonzero coordinate 1),
    ordered lexicographically."""
    pts = []
    for v in product(range(q), repeat=3):
        nz = next((x for x in v if x), None)
        if nz == 1:
            pts.append(v)
    return pts


def matrix_action_pg2(mat, q: int) -> tuple[int, ...]:
    """Permutation of PG(2, q) induced by x -> M x (columns convention)."""
    pts = pg2_points(q)
    index = {v: i for i, v in enumerate(pts)}

    def apply(v):
        w = tuple(sum(mat[i][j] * v[j] for j in range(3)) % q
                  for i in range(3))
        nz = next(x for x in w if x)
        inv = pow(nz, -1, q)
        return tuple(x * inv % q for x in w)

    return tuple(index[apply(v)] for v in pts)


def make_l3(q: int, name: str, expect_order: int) -> None:
    transvection = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    cycle = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    gens = [matrix_action_pg2(transvection, q), matrix_action_pg2(cycle, q)]
    write_group(
        name, q * q + q + 1, gens,
        f"PSL(3,{q}) acting on the {q * q + q + 1} points of PG(2,{q}); "
        "generators are the images of an elementary transvection and the "
        "cyclic coordinate permutation",
        expect_order=expect_order)


# ---------------------------------------------------------------------------
# PGL2(9) on the projective line over GF(9) = GF(3)[i], i^2 = -1


class F9:
    """GF(9) as pairs (a, b) = a + b*i with i^2 = -1 over GF(3)."""

    ELEMENTS = [(a, b) for b in range(3) for a in range(3)]

    @staticmethod
    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    @staticmethod
    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3,
                (x[0] * y[1] + x[1] * y[0]) % 3)

    @staticmethod
    def inv(x):
        n = (x[0] * x[0] + x[1] * x[1]) % 3  # norm x * conj(x)
        ni = pow(n, -1, 3)
        return ((x[0] * ni) % 3, (-x[1] * ni) % 3)


def make_pgl2_9() -> None:
    zero, one = (0, 0), (1, 0)
    zeta = (1, 1)  # 1 + i generates GF(9)^* (order 8)
    points = ["inf"] + F9.ELEMENTS[:]  # 10 points, infinity first
    index = {p: i for i, p in enumerate(points)}

    def perm(f):
        return tuple(index[f(p)] for p in points)

    def shift(p):
        return "inf" if p == "inf" else F9.add(p, one)

    def scale(p):
        return "inf" if p == "inf" else F9.mul(zeta, p)

    def invert(p):
        if p == "inf":
            return zero
        if p == zero:
            return "inf"
        return F9.inv(p)

    gens = [perm(shift), perm(scale), perm(invert)]
    write_group(
        "pgl2_9", 10, gens,
        "PGL(2,9) as Mobius transformations of the projective line over "
        "GF(9) = GF(3)[i]: x -> x+1, x -> (1+i)x, x -> 1/x",
        expect_order=720)


# ---------------------------------------------------------------------------
# M24 on the projective line over GF(23)


def make_m24() -> None:
    q = 23
    points = ["inf"] + list(range(q))  # canonical: infinity, 0, 1, ..., 22
    index = {p: i for i, p in enumerate(points)}
    squares = {pow(x, 2, q) for x in range(1, q)}

    def perm(f):
        return tuple(index[f(p)] for p in points)

    def shift(t):
        return "inf" if t == "inf" else (t + 1) % q

    def double(t):
        return "inf" if t == "inf" else (2 * t) % q

    def neg_invert(t):
        if t == "inf":
            return 0
        if t == 0:
            return "inf"
        return (-pow(t, -1, q)) % q

    inv9 = pow(9, -1, q)

    def cubing(t):
        # t -> t^3 / 9 on squares, t -> 9 t^3 on non-squares (0, inf fixed)
        if t in ("inf", 0):
            return t
        c = pow(t, 3, q)
        return (c * inv9) % q if t in squares else (9 * c) % q

    gens = [perm(shift), perm(double), perm(neg_invert), perm(cubing)]
    G = PermGroup(24, gens, name="m24")
    assert G.order == 244823040, G.order
    # 2-transitivity: the infinity-fixing generators move 0 through all of
    # GF(23); together with |G| this pins the isomorphism type
    H = G.subgroup([gens[0], gens[1], gens[3]])
    assert len(H.orbit_of_point(1)) == 23
    write_group(
        "m24", 24, gens,
        "Mathieu group of degree 24 on the projective line over GF(23): "
        "generated by t -> t+1, t -> 2t, t -> -1/t and the cubing map "
        "t -> t^3/9 (squares) / 9t^3 (non-squares); verified of order "
        "244823040 and 2-transitive",
        expect_order=244823040)


# ---------------------------------------------------------------------------
# M12 with its classical degree-12 generators


def make_m12() -> None:
    from lefschetz.perm import parse_perm
    gens = [
        parse_perm("(1,2,3,4,5,6,7,8,9,10,11)", 12),
        parse_perm("(3,7,11,8)(4,10,5,6)", 12),
        parse_perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12),
    ]
    write_group(
        "m12", 12, gens,
        "Mathieu group of degree 12: an 11-cycle, a double 4-cycle and a "
        "pairing involution (classical generating triple); order verified",
        expect_order=95040)


def make_m12_mod2() -> None:
    text = (
        "# provenance: published 2-modular data for the Mathieu group of "
        "degree 12: simple-module dimensions and the Cartan diagonal entry "
        "of the degree-144 simple\n"
        "name: m12\n"
        "prime: 2\n"
        "degrees: 1 10 16 16 44 144\n"
        "cartan 144: 2\n")
    out = DATA / "m12_mod2.moddata"
    out.write_text(text, encoding="utf-8")
    print(f"wrote {out.name}")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    make_l3(2, "l3_2", 168)
    make_l3(3, "l3_3", 5616)
    make_pgl2_9()
    make_m12()
    make_m24()
    make_m12_mod2()


if __name__ == "__main__":
    main()
