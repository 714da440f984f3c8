"""Construct the Hall-Janko group on 100 points and write data/j2.group.

Construction, from first principles:

1. SU(3,3) is generated inside GL(3,9) by its unitary unitriangular matrices
   together with an antidiagonal Weyl element (found by exhaustive search
   against the hermitian condition M^T J conj(M) = J for the antidiagonal
   form J); it acts faithfully on the 28 isotropic points of PG(2,9).
2. A subgroup L ~ PSL(2,7) of index 36 is found as a (2,3,7) generator pair;
   its 36 conjugates plus the 63 nonisotropic points extend the action to
   100 = 1 + 36 + 63 points.
3. The orbitals of U(3,3) on ordered pairs of the 100 points are enumerated
   and a union of symmetric orbitals containing the star-to-conjugates pairs
   is selected so that the result is a strongly regular graph with
   parameters (100, 36, 14, 12).
4. A graph automorphism moving the distinguished point is found by
   adjacency-consistent backtracking; together with U(3,3) it generates a
   vertex-transitive group whose derived subgroup of order 604800 is the
   Hall-Janko group.  Order, transitivity and the pinned classes are
   asserted before the data file is written.
"""

from __future__ import annotations

import random
import sys
from itertools import combinations, product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from lefschetz.classes import conjugacy_classes
from lefschetz.formats import ClassPin, GroupFile, serialize_group_file
from lefschetz.group import PermGroup
from lefschetz.perm import as_bytes, compose, conjugate, perm_order

DATA = Path(__file__).resolve().parents[1] / "src" / "lefschetz" / "data"


# ---------------------------------------------------------------------------
# GF(9) = GF(3)[i] with i^2 = -1; conjugation is the Frobenius x -> x^3


ELEMS = [(a, b) for a in range(3) for b in range(3)]
ZERO, ONE = (0, 0), (1, 0)
IDENTITY3 = ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))


def add(x, y):
    return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)


def mul(x, y):
    return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)


def neg(x):
    return ((-x[0]) % 3, (-x[1]) % 3)


def conj(x):
    return (x[0], (-x[1]) % 3)


def inv(x):
    n = (x[0] * x[0] + x[1] * x[1]) % 3
    ni = pow(n, -1, 3)
    return ((x[0] * ni) % 3, (-x[1] * ni) % 3)


def _dot(row, col):
    s = ZERO
    for a, b in zip(row, col):
        s = add(s, mul(a, b))
    return s


def mat_mul(M, N):
    cols = tuple(zip(*N))
    return tuple(tuple(_dot(M[i], cols[j]) for j in range(3))
                 for i in range(3))


def det(M):
    s = ZERO
    for (a, b, c), sign in (((0, 1, 2), 1), ((0, 2, 1), -1), ((1, 0, 2), -1),
                            ((1, 2, 0), 1), ((2, 0, 1), 1), ((2, 1, 0), -1)):
        t = mul(mul(M[0][a], M[1][b]), M[2][c])
        s = add(s, t if sign == 1 else neg(t))
    return s


J = ((ZERO, ZERO, ONE), (ZERO, ONE, ZERO), (ONE, ZERO, ZERO))


def is_unitary(M):
    # preserves h(x, y) = x^T J conj(y):  M^T J conj(M) = J
    Mt = tuple(zip(*M))
    Mc = tuple(tuple(conj(v) for v in row) for row in M)
    return mat_mul(mat_mul(Mt, J), Mc) == J


def projective_points():
    pts = []
    for v in product(ELEMS, repeat=3):
        nz = next((x for x in v if x != ZERO), None)
        if nz == ONE:
            pts.append(v)
    assert len(pts) == 91
    return pts


def normalize(v):
    s = inv(next(x for x in v if x != ZERO))
    return tuple(mul(s, x) for x in v)


def isotropic(v):
    # h(v, v) = v1*conj(v3) + v2*conj(v2) + v3*conj(v1)
    s = add(mul(v[0], conj(v[2])), mul(v[1], conj(v[1])))
    s = add(s, mul(v[2], conj(v[0])))
    return s == ZERO


def apply_mat(M, v):
    return normalize(tuple(_dot(M[i], v) for i in range(3)))


def find_l27(G: PermGroup) -> PermGroup:
    """A (2,3,7)-generated subgroup of order 168 (PSL(2,7), index 36)."""
    rng = random.Random(97)
    invols: list = []
    thirds: list = []
    while True:
        x = G.random_element(rng)
        o = perm_order(x)
        if o % 2 == 0:
            y = x
            for _ in range(o // 2 - 1):
                y = compose(y, x)
            invols.append(y)
        if o % 3 == 0:
            y = x
            for _ in range(o // 3 - 1):
                y = compose(y, x)
            thirds.append(y)
        for t in invols:
            for s in thirds:
                if perm_order(compose(t, s)) == 7:
                    H = G.subgroup([t, s], name="l2_7")
                    if H.order == 168:
                        return H


def build_u33_on_100() -> PermGroup:
    """U(3,3) acting on 1 + 36 + 63 points."""
    pts = projective_points()
    iso = [v for v in pts if isotropic(v)]
    noniso = [v for v in pts if not isotropic(v)]
    assert len(iso) == 28 and len(noniso) == 63
    iidx = {v: i for i, v in enumerate(iso)}
    nidx = {v: i for i, v in enumerate(noniso)}

    unitriangular = [M for a, b, c in product(ELEMS, repeat=3)
                     for M in (((ONE, a, b), (ZERO, ONE, c),
                                (ZERO, ZERO, ONE)),)
                     if is_unitary(M) and M != IDENTITY3]
    assert len(unitriangular) == 26  # the 27-element unipotent radical
    weyl = next(M for a, b, c in product(ELEMS, repeat=3)
                for M in (((ZERO, ZERO, a), (ZERO, b, ZERO),
                           (c, ZERO, ZERO)),)
                if ZERO not in (a, b, c) and is_unitary(M)
                and det(M) == ONE)
    mats = unitriangular[:4] + [weyl]

    perms28 = [tuple(iidx[apply_mat(M, v)] for v in iso) for M in mats]
    G28 = PermGroup(28, perms28, name="u3_3")
    assert G28.order == 6048, G28.order

    L = find_l27(G28)
    base = frozenset(as_bytes(g) for g in L.elements())

    def conj_set(S, g):
        return frozenset(as_bytes(conjugate(tuple(w), g)) for w in S)

    conjugates = [base]
    seen = {base}
    queue = [base]
    while queue:
        S = queue.pop()
        for g in perms28:
            T = conj_set(S, g)
            if T not in seen:
                seen.add(T)
                conjugates.append(T)
                queue.append(T)
    assert len(conjugates) == 36, len(conjugates)
    cidx = {S: i for i, S in enumerate(conjugates)}

    perms100 = []
    for M, g28 in zip(mats, perms28):
        img = [0] * 100
        for i, S in enumerate(conjugates):
            img[1 + i] = 1 + cidx[conj_set(S, g28)]
        for i, v in enumerate(noniso):
            img[37 + i] = 37 + nidx[apply_mat(M, v)]
        perms100.append(tuple(img))

    G100 = PermGroup(100, perms100, name="u3_3_on_100")
    assert G100.order == 6048, G100.order
    assert sorted(len(o) for o in G100.orbits()) == [1, 36, 63]
    return G100


def orbitals(G: PermGroup):
    """Orbit labels of G on ordered pairs of points."""
    n = G.degree
    gens = list(G.generators)
    label = [[-1] * n for _ in range(n)]
    reps = []
    for a in range(n):
        for b in range(n):
            if label[a][b] != -1:
                continue
            k = len(reps)
            reps.append((a, b))
            label[a][b] = k
            stack = [(a, b)]
            while stack:
                x, y = stack.pop()
                for g in gens:
                    px, py = g[x], g[y]
                    if label[px][py] == -1:
                        label[px][py] = k
                        stack.append((px, py))
    return label, reps


def find_srg(G100: PermGroup) -> np.ndarray:
    label, reps = orbitals(G100)
    n = 100
    lab = np.array(label)
    # pair up non-diagonal orbitals with their transposes
    cand = []
    for k, (a, b) in enumerate(reps):
        if a == b:
            continue
        kt = label[b][a]
        if kt == k:
            cand.append(frozenset([k]))
        elif k < kt:
            cand.append(frozenset([k, kt]))
    must = frozenset({label[0][1], label[1][0]})  # star adjacent to the 36
    options = [c for c in cand if not (c & must)]
    eye = np.eye(n, dtype=np.int64)
    for r in range(len(options) + 1):
        for pick in combinations(options, r):
            chosen = set(must)
            for c in pick:
                chosen |= c
            A = np.isin(lab, list(chosen)).astype(np.int64)
            if not (A == A.T).all():
                continue
            if not (A.sum(axis=1) == 36).all():
                continue
            A2 = A @ A
            if ((A2 * A) == 14 * A).all() \
                    and ((A2 * (1 - A - eye)) == 12 * (1 - A - eye)).all():
                print("SRG(100,36,14,12) from orbitals", sorted(chosen))
                return A
    raise RuntimeError("no SRG(100,36,14,12) union of orbitals")


def find_extra_automorphism(A: np.ndarray):
    """Backtracking search for a graph automorphism with sigma(0) = 1."""
    n = A.shape[0]
    adj = [set(np.nonzero(A[v])[0].tolist()) for v in range(n)]
    order = [0]
    seen = {0}
    qi = 0
    while len(order) < n:
        v = order[qi]
        qi += 1
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    img = [-1] * n
    used = [False] * n
    img[0] = 1
    used[1] = True

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        prior = order[:i]
        for w in range(n):
            if used[w]:
                continue
            if all((u in adj[v]) == (img[u] in adj[w]) for u in prior):
                img[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                img[v] = -1
                used[w] = False
        return False

    if not extend(1):
        raise RuntimeError("no automorphism moving the star point")
    return tuple(img)


def two_generator_set(G: PermGroup) -> list:
    rng = random.Random(424242)
    while True:
        x = G.random_element(rng)
        y = G.random_element(rng)
        if PermGroup(G.degree, [x, y]).order == G.order:
            return [x, y]


def main() -> None:
    G100 = build_u33_on_100()
    print("U3(3) on 100 points:", G100.order,
          sorted(len(o) for o in G100.orbits()))
    A = find_srg(G100)
    sigma = find_extra_automorphism(A)
    print("extra automorphism found; order", perm_order(sigma))
    big = PermGroup(100, list(G100.generators) + [sigma], name="aut")
    print("generated order:", big.order)
    if big.order == 1209600:
        J2 = big.derived_subgroup()
    elif big.order == 604800:
        J2 = big
    else:
        raise RuntimeError(f"unexpected order {big.order}")
    assert J2.order == 604800, J2.order
    assert len(J2.orbits()) == 1
    gens = two_generator_set(J2)
    J2 = PermGroup(100, gens, name="j2")
    assert J2.order == 604800
    print("computing classes for pins ...")
    cl = conjugacy_classes(J2)
    print("classes:", [(c.label, c.size) for c in cl])
    pins = tuple(ClassPin(c.label, c.element_order, c.size) for c in cl)
    gf = GroupFile(
        name="j2", degree=100, generators=tuple(gens), class_pins=pins,
        provenance=(
            "Hall-Janko group on 100 points: derived subgroup of the "
            "automorphism group of the strongly regular graph "
            "(100,36,14,12) assembled from the orbitals of U(3,3) acting "
            "on 1 + 36 + 63 points (a fixed point, the 36 conjugates of "
            "an L(2,7) subgroup, the 63 nonisotropic points of PG(2,9)); "
            "order 604800 and transitivity verified during construction"))
    out = DATA / "j2.group"
    out.write_text(serialize_group_file(gf), encoding="utf-8")
    print(f"wrote {out.name}: order {J2.order}, {len(pins)} pinned classes")


if __name__ == "__main__":
    main()
