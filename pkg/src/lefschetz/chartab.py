"""Ordinary character tables, computed exactly.

The method is the classical one: the normalized character values
omega_i = |K_i| chi(g_i) / chi(1) are simultaneous eigenvalues of the class
multiplication matrices (A_i)_{jk} = #{(x,y) in K_i x K_j : xy = z_k}.  Over
a prime field F_l with l == 1 (mod exp(G)) and l > 2 sqrt(|G|), the common
eigenspaces are all one-dimensional; each eigenvector determines a character
mod l, and the true cyclotomic values are recovered through a discrete
Fourier transform over the power map (the multiplicity of each eigenvalue
zeta_o^t in rho(g) is a nonnegative integer below l, so its residue lifts
uniquely).

Everything downstream is verified: both orthogonality relations hold exactly
in cyclotomic arithmetic, degrees divide |G|, and the squared degrees sum to
|G|.  No floating point is involved anywhere.

Character labels are canonical: characters are sorted by degree, then by
value vectors compared position-wise along the canonical class order (larger
values first, rationals before irrationals), and named "1a", "7a", "14b", ...
by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import isqrt, lcm
from typing import Sequence

from sympy import isprime
from sympy.ntheory import primitive_root
from sympy.ntheory.residue_ntheory import sqrt_mod

from .classes import ClassData, _letters, conjugacy_classes
from .cyclotomic import Cyc
from .errors import IncompleteSearch
from .group import PermGroup
from .perm import as_bytes, compose_bytes, inverse_bytes

# ---------------------------------------------------------------------------
# small exact linear algebra over F_l


def _mat_mul(A, B, l):
    n, m, k = len(A), len(B[0]), len(B)
    Bt = [[B[r][c] for r in range(k)] for c in range(m)]
    return [[sum(row[t] * col[t] for t in range(k)) % l for col in Bt]
            for row in A]


def _mat_vec(A, v, l):
    return [sum(a * x for a, x in zip(row, v)) % l for row in A]


def _charpoly(A, l):
    """Coefficients c[0..d] of det(xI - A) over F_l (Faddeev-LeVerrier)."""
    d = len(A)
    c = [0] * (d + 1)
    c[d] = 1
    M = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for k in range(1, d + 1):
        AM = _mat_mul(A, M, l)
        tr = sum(AM[i][i] for i in range(d)) % l
        ck = (-tr * pow(k, -1, l)) % l
        c[d - k] = ck
        for i in range(d):
            AM[i][i] = (AM[i][i] + ck) % l
        M = AM
    return c


def _poly_roots(c, l):
    """Roots in F_l of the polynomial with coefficients c[0..d]."""
    roots = []
    for x in range(l):
        acc = 0
        for coef in reversed(c):
            acc = (acc * x + coef) % l
        if acc == 0:
            roots.append(x)
    return roots


def _nullspace(A, l):
    """Basis (list of vectors) of the kernel of A over F_l."""
    d = len(A)
    m = len(A[0])
    rows = [list(r) for r in A]
    pivots = []
    r = 0
    for col in range(m):
        piv = None
        for i in range(r, d):
            if rows[i][col] % l:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, l)
        rows[r] = [(x * inv) % l for x in rows[r]]
        for i in range(d):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % l for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == d:
            break
    basis = []
    free = [c for c in range(m) if c not in pivots]
    for fc in free:
        v = [0] * m
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-rows[ri][fc]) % l
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    label: str
    degree: int
    values: tuple[Cyc, ...]

    def __call__(self, class_index: int) -> Cyc:
        return self.values[class_index]


def _cyc_cmp_desc(a: Cyc, b: Cyc) -> int:
    """Total order on values: larger rationals first, then irrationals by
    conductor and canonical string."""
    ra, rb = a.is_rational(), b.is_rational()
    if ra and rb:
        qa, qb = a.as_rational(), b.as_rational()
        return -1 if qa > qb else (1 if qa < qb else 0)
    if ra != rb:
        return -1 if ra else 1
    ka = (a.conductor, str(a))
    kb = (b.conductor, str(b))
    return -1 if ka < kb else (1 if ka > kb else 0)


def _char_cmp(x: tuple[int, tuple[Cyc, ...]], y) -> int:
    if x[0] != y[0]:
        return -1 if x[0] < y[0] else 1
    for a, b in zip(x[1], y[1]):
        c = _cyc_cmp_desc(a, b)
        if c:
            return c
    return 0


class CharacterTable:
    """Irreducible characters of a finite group over its conjugacy classes."""

    def __init__(self, class_data: ClassData, irreducibles: list[Character],
                 name: str | None = None):
        self.classes = class_data
        self.group = class_data.group
        self.irreducibles = irreducibles
        self.name = name or (self.group.name if self.group is not None else None)
        self._by_label = {c.label: c for c in irreducibles}

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __iter__(self):
        return iter(self.irreducibles)

    def by_label(self, label: str) -> Character:
        return self._by_label[label]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.irreducibles]

    @property
    def order(self) -> int:
        return sum(c.size for c in self.classes)

    def inner_product(self, f: Sequence[Cyc], g: Sequence[Cyc]) -> Fraction:
        """<f, g> = (1/|G|) sum |K| f(g_K) conj(g(g_K)); must be rational."""
        total = Cyc(0)
        for c in self.classes:
            total = total + f[c.index] * g[c.index].conjugate() * c.size
        return (total / self.order).as_rational()

    def decompose(self, values: Sequence[Cyc]) -> dict[str, int]:
        """Multiplicities of each irreducible in a virtual character."""
        out: dict[str, int] = {}
        for chi in self.irreducibles:
            m = self.inner_product(values, chi.values)
            if m.denominator != 1:
                raise IncompleteSearch(
                    f"non-integral multiplicity {m} against {chi.label}")
            if m:
                out[chi.label] = int(m)
        return out

    def verify(self) -> None:
        """Exact first and second orthogonality; degree sanity."""
        n = self.order
        classes = self.classes
        inv = classes.inverse_map()
        r = len(classes)
        chars = self.irreducibles
        if len(chars) != r:
            raise IncompleteSearch("number of characters != number of classes")
        if sum(c.degree ** 2 for c in chars) != n:
            raise IncompleteSearch("degrees squared do not sum to |G|")
        for chi in chars:
            if n % chi.degree != 0:
                raise IncompleteSearch(f"degree {chi.degree} does not divide |G|")
            for k in range(r):
                if chi.values[k].conjugate() != chi.values[inv[k]]:
                    raise IncompleteSearch("conjugate value != value at inverse class")
                if not chi.values[k].is_integral():
                    raise IncompleteSearch("character value not an algebraic integer")
        for i, chi in enumerate(chars):
            for j in range(i, r):
                psi = chars[j]
                total = Cyc(0)
                for c in classes:
                    total = total + chi.values[c.index] * \
                        psi.values[inv[c.index]] * c.size
                want = n if i == j else 0
                if total != Cyc(want):
                    raise IncompleteSearch(
                        f"row orthogonality fails for {chi.label}, {psi.label}")
        for k in range(r):
            for m in range(k, r):
                total = Cyc(0)
                for chi in chars:
                    total = total + chi.values[k] * chi.values[inv[m]]
                want = classes[k].centralizer_order if k == m else 0
                if total != Cyc(want):
                    raise IncompleteSearch(
                        f"column orthogonality fails at classes {k}, {m}")


def _dixon_prime(order: int, exponent: int) -> int:
    bound = 2 * isqrt(order) + 1
    l = exponent + 1
    while True:
        if l > bound and isprime(l):
            return l
        l += exponent


def character_table(G: PermGroup | ClassData, *,
                    enum_limit: int = 2_000_000) -> CharacterTable:
    """The full ordinary character table, by eigenvector splitting mod l."""
    if isinstance(G, ClassData):
        classes = G
        group = classes.group
    else:
        group = G
        classes = conjugacy_classes(G, enum_limit=enum_limit)
    ident = classes.element_to_class
    if ident is None:
        raise IncompleteSearch(
            "character table computation needs the full class lookup table")
    r = len(classes)
    n = group.order
    exponent = lcm(*[c.element_order for c in classes])
    l = _dixon_prime(n, exponent)

    # class element lists (bytes), class reps (bytes)
    members: list[list[bytes]] = [[] for _ in range(r)]
    for key, idx in ident.items():
        members[idx].append(key)
    reps = [as_bytes(c.rep) for c in classes]

    def class_matrix(i: int) -> list[list[int]]:
        A = [[0] * r for _ in range(r)]
        for xb in members[i]:
            xinv = inverse_bytes(xb)
            for k in range(r):
                j = ident[compose_bytes(xinv, reps[k])]
                A[j][k] += 1
        return A

    # split the common eigenspaces, smallest classes first
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    by_size = sorted(range(r), key=lambda i: (classes[i].size, i))
    for i in by_size:
        if classes[i].size == 1 and classes[i].element_order == 1:
            continue
        if all(len(W) == 1 for W in spaces):
            break
        A = class_matrix(i)
        new_spaces = []
        for W in spaces:
            if len(W) == 1:
                new_spaces.append(W)
                continue
            # matrix of A acting on W: A maps W into itself
            imgs = [_mat_vec(A, w, l) for w in W]
            B = _solve_in_basis(W, imgs, l)
            for lam in sorted(set(_poly_roots(_charpoly(B, l), l))):
                Bl = [[(B[x][y] - (lam if x == y else 0)) % l
                       for y in range(len(B[0]))] for x in range(len(B))]
                # kernel coordinates (against W) span one eigenspace, which
                # stays together as a single subspace for later splitting
                eig = []
                for coeffs in _nullspace(_transpose(Bl), l):
                    vec = [0] * r
                    for cf, w in zip(coeffs, W):
                        for t in range(r):
                            vec[t] = (vec[t] + cf * w[t]) % l
                    eig.append(vec)
                if eig:
                    new_spaces.append(eig)
        spaces = new_spaces
    if not all(len(W) == 1 for W in spaces) or len(spaces) != r:
        raise IncompleteSearch("eigenspace splitting incomplete")

    inv_map = classes.inverse_map()
    sizes = [c.size for c in classes]
    w = primitive_root(l)
    chars_mod: list[list[int]] = []
    degrees: list[int] = []
    for (v,) in spaces:
        if v[0] == 0:
            raise IncompleteSearch("eigenvector vanishes at the identity class")
        scale = pow(v[0], -1, l)
        v = [(x * scale) % l for x in v]
        s = sum(v[k] * v[inv_map[k]] * pow(sizes[k], -1, l) for k in range(r)) % l
        d2 = (n * pow(s, -1, l)) % l
        root = sqrt_mod(d2, l)
        if root is None:
            raise IncompleteSearch("degree squared is not a residue")
        d = min(root, l - root)
        degrees.append(d)
        theta = [(d * v[k] * pow(sizes[k], -1, l)) % l for k in range(r)]
        chars_mod.append(theta)
    if sum(d * d for d in degrees) != n:
        raise IncompleteSearch("degree recovery failed")

    # lift via discrete Fourier transform along power maps
    chars: list[tuple[int, tuple[Cyc, ...]]] = []
    for theta, d in zip(chars_mod, degrees):
        values: list[Cyc] = []
        for c in classes:
            o = c.element_order
            if o == 1:
                values.append(Cyc(d))
                continue
            z = pow(w, (l - 1) // o, l)
            pm = [classes.power_map(s) for s in range(o)]
            total = Cyc(0)
            msum = 0
            oinv = pow(o, -1, l)
            for t in range(o):
                acc = 0
                for s in range(o):
                    acc += theta[pm[s][c.index]] * pow(z, (-s * t) % o, l)
                m_t = (acc * oinv) % l
                if m_t > isqrt(n):
                    raise IncompleteSearch("eigenvalue multiplicity exceeds bound")
                msum += m_t
                if m_t:
                    total = total + Cyc.root_of_unity(o, t) * m_t
            if msum != d:
                raise IncompleteSearch("multiplicities do not sum to the degree")
            values.append(total)
        chars.append((d, tuple(values)))

    chars.sort(key=cmp_to_key(_char_cmp))
    counts: dict[int, int] = {}
    irreducibles = []
    for d, values in chars:
        k = counts.get(d, 0)
        counts[d] = k + 1
        irreducibles.append(Character(label=f"{d}{_letters(k)}", degree=d,
                                      values=values))
    table = CharacterTable(classes, irreducibles)
    table.verify()
    return table


def _transpose(A):
    return [list(col) for col in zip(*A)]


def _solve_in_basis(W, imgs, l):
    """Express each img as a combination of the rows of W: imgs = B @ W."""
    d = len(W)
    r = len(W[0])
    # solve x @ W = img for each img: use rref of W with tracking
    aug = [list(w) + [1 if i == j else 0 for j in range(d)]
           for i, w in enumerate(W)]
    pivots = []
    rr = 0
    for col in range(r):
        piv = None
        for i in range(rr, d):
            if aug[i][col] % l:
                piv = i
                break
        if piv is None:
            continue
        aug[rr], aug[piv] = aug[piv], aug[rr]
        inv = pow(aug[rr][col], -1, l)
        aug[rr] = [(x * inv) % l for x in aug[rr]]
        for i in range(d):
            if i != rr and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % l for a, b in zip(aug[i], aug[rr])]
        pivots.append(col)
        rr += 1
        if rr == d:
            break
    if rr != d:
        raise IncompleteSearch("independent subspace basis expected")
    B = []
    for img in imgs:
        coeffs = [0] * d
        res = list(img)
        for ri, pc in enumerate(pivots):
            f = res[pc] % l
            if f:
                coeffs_row = aug[ri]
                for t in range(r):
                    res[t] = (res[t] - f * coeffs_row[t]) % l
                for t in range(d):
                    coeffs[t] = (coeffs[t] + f * coeffs_row[r + t]) % l
        if any(x % l for x in res):
            raise IncompleteSearch("image not inside the invariant subspace")
        B.append(coeffs)
    return B


# ---------------------------------------------------------------------------
# class functions, induction, restriction


def trivial_character_values(classes: ClassData) -> tuple[Cyc, ...]:
    return tuple(Cyc(1) for _ in classes)


def fusion_map(sub_classes: ClassData, big_classes: ClassData) -> tuple[int, ...]:
    """Map each class of the subgroup to the ambient class containing it."""
    return tuple(big_classes.identify(c.rep) for c in sub_classes)


def induce_values(sub_classes: ClassData, psi: Sequence[Cyc],
                  big_classes: ClassData,
                  fusion: tuple[int, ...] | None = None) -> tuple[Cyc, ...]:
    """Induced class function: Ind(psi)(g) = |C_G(g)| sum psi(h_j)/|C_H(h_j)|
    over subgroup classes j fusing into the class of g."""
    if fusion is None:
        fusion = fusion_map(sub_classes, big_classes)
    out = [Cyc(0) for _ in big_classes]
    for j, target in enumerate(fusion):
        out[target] = out[target] + \
            psi[j] / sub_classes[j].centralizer_order
    return tuple(v * big_classes[k].centralizer_order
                 for k, v in enumerate(out))


def restrict_values(chi: Sequence[Cyc], sub_classes: ClassData,
                    big_classes: ClassData,
                    fusion: tuple[int, ...] | None = None) -> tuple[Cyc, ...]:
    if fusion is None:
        fusion = fusion_map(sub_classes, big_classes)
    return tuple(chi[fusion[j]] for j in range(len(sub_classes)))
