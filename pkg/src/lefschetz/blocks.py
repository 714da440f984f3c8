"""p-blocks, class multiplication coefficients, and closure checks.

Two irreducible characters lie in the same p-block exactly when their central
characters omega_chi(K-hat) = |K| chi(g) / chi(1) agree after reduction
modulo a fixed maximal ideal above p.  The reduction is made explicit: all
omega values live in Z[zeta_N] for conductors N dividing a common modulus;
writing N = p^b * n with p not dividing n, the p-power part of every root of
unity collapses to 1, and the p'-part maps to a root of the chosen
irreducible factor f of the cyclotomic polynomial Phi_m over F_p.  The
factor is pinned deterministically: smallest coefficient tuple (constant
term first, entries in [0, p)).

The class multiplication coefficient xi(i, j, k) counts pairs (x, y) with x
in class i, y in class j and xy equal to a fixed representative of class k;
it is computed from the table by the standard formula

    xi = (|K_i| |K_j| / |G|) * sum_chi chi(g_i) chi(g_j) conj(chi(g_k)) / chi(1)

and must come out a nonnegative integer (anything else means the table is
corrupt).  xi also powers a sufficient certificate for the closure check on
commuting products of p-elements; the exact check enumerates inside
centralizers only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Iterable

from sympy import Poly, Symbol, cyclotomic_poly

from .backtrack import centralizer
from .chartab import CharacterTable
from .classes import ClassData
from .cyclotomic import Cyc
from .errors import IncompleteSearch, ResourceBoundExceeded
from .perm import compose, perm_order

DEFAULT_CENTRALIZER_BOUND = 1_000_000


def nu(p: int, n: int) -> int:
    """Exponent of the prime p in n."""
    if n == 0:
        raise ValueError("nu(p, 0) undefined")
    out = 0
    while n % p == 0:
        n //= p
        out += 1
    return out


# ---------------------------------------------------------------------------
# reduction modulo a maximal ideal above p


@lru_cache(maxsize=None)
def _pinned_factor(p: int, m: int) -> tuple[int, ...]:
    """The pinned irreducible factor of Phi_m over F_p, as an ascending
    coefficient tuple (monic)."""
    x = Symbol("x")
    poly = Poly(cyclotomic_poly(m, x), x, modulus=p, symmetric=False)
    factors = [f for f, _ in poly.factor_list()[1]]
    keys = []
    for f in factors:
        coeffs = [int(c) % p for c in reversed(f.all_coeffs())]
        keys.append(tuple(coeffs))
    return min(keys)


class IdealReducer:
    """Ring homomorphism from cyclotomic integers onto F_{p^d}, killing the
    p-power roots of unity; conductors must divide p^inf * m."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        f = _pinned_factor(p, m)
        self.f = f
        self.d = len(f) - 1
        self._xpows: list[tuple[int, ...]] = [
            tuple(1 if i == 0 else 0 for i in range(self.d))]

    def _xpow(self, k: int) -> tuple[int, ...]:
        p, d, f = self.p, self.d, self.f
        while len(self._xpows) <= k:
            last = self._xpows[-1]
            shifted = [0] + list(last[:d - 1])
            carry = last[d - 1]
            if carry:
                for i in range(d):
                    shifted[i] = (shifted[i] - carry * f[i]) % p
            self._xpows.append(tuple(c % p for c in shifted))
        return self._xpows[k]

    def reduce(self, value: Cyc) -> tuple[int, ...]:
        if not value.is_integral():
            raise ValueError(f"{value} is not an algebraic integer")
        n, coeffs = value.to_root_coeffs()
        b = nu(self.p, n)
        n_prime = n // self.p ** b
        if self.m % n_prime:
            raise ValueError(f"conductor {n} not supported by modulus {self.m}")
        scale = self.m // n_prime
        unit = pow(self.p ** b % n_prime, -1, n_prime) if n_prime > 1 else 0
        acc = [0] * self.d
        for k, q in coeffs.items():
            e = (scale * unit * k) % self.m if n_prime > 1 else 0
            xp = self._xpow(e)
            c = int(q) % self.p
            if c:
                for i in range(self.d):
                    acc[i] = (acc[i] + c * xp[i]) % self.p
        return tuple(acc)


# ---------------------------------------------------------------------------
# block partition


@dataclass(frozen=True)
class BlockPartition:
    prime: int
    blocks: tuple[tuple[int, ...], ...]
    defects: tuple[int, ...]
    labels: tuple[tuple[str, ...], ...]

    def block_of(self, index: int) -> int:
        for b, members in enumerate(self.blocks):
            if index in members:
                return b
        raise KeyError(index)

    @property
    def principal(self) -> tuple[int, ...]:
        return self.blocks[0]


def central_character_values(table: CharacterTable, chi_index: int) -> tuple[Cyc, ...]:
    """omega_chi on each class sum: |K| chi(g) / chi(1)."""
    chi = table.irreducibles[chi_index]
    out = []
    for c in table.classes:
        v = chi.values[c.index] * c.size / chi.degree
        if not v.is_integral():
            raise IncompleteSearch(
                f"central character of {chi.label} is not integral")
        out.append(v)
    return tuple(out)


def p_blocks(table: CharacterTable, p: int) -> BlockPartition:
    """Partition of the irreducibles into p-blocks, principal block first,
    remaining blocks ordered by their smallest character index."""
    order = table.order
    omegas = [central_character_values(table, i)
              for i in range(len(table.irreducibles))]
    m = 1
    for row in omegas:
        for v in row:
            n = v.conductor
            m = lcm(m, n // p ** nu(p, n))
    reducer = IdealReducer(p, m)
    signatures: dict[tuple, list[int]] = {}
    for i, row in enumerate(omegas):
        sig = tuple(reducer.reduce(v) for v in row)
        signatures.setdefault(sig, []).append(i)

    trivial = next(i for i, chi in enumerate(table.irreducibles)
                   if chi.degree == 1
                   and all(v == Cyc(1) for v in chi.values))
    groups = sorted(signatures.values(),
                    key=lambda idxs: (trivial not in idxs, min(idxs)))
    np_order = nu(p, order)
    blocks = tuple(tuple(sorted(g)) for g in groups)
    defects = tuple(np_order - min(nu(p, table.irreducibles[i].degree)
                                   for i in g) for g in blocks)
    if defects[0] != np_order:
        raise IncompleteSearch("principal block does not have full defect")
    if sorted(i for g in blocks for i in g) != list(range(len(table.irreducibles))):
        raise IncompleteSearch("blocks do not partition the irreducibles")
    labels = tuple(tuple(table.irreducibles[i].label for i in g)
                   for g in blocks)
    return BlockPartition(prime=p, blocks=blocks, defects=defects,
                          labels=labels)


# ---------------------------------------------------------------------------
# class multiplication coefficients


def class_mult_coefficient(table: CharacterTable, i: int, j: int, k: int) -> int:
    """xi(i, j, k) = #{(x, y) in K_i x K_j : xy = g_k}, via the table."""
    classes = table.classes
    total = Cyc(0)
    for chi in table.irreducibles:
        total = total + (chi.values[i] * chi.values[j] *
                         chi.values[k].conjugate()) / chi.degree
    value = total * classes[i].size * classes[j].size / table.order
    if not value.is_rational():
        raise IncompleteSearch("class multiplication coefficient not rational")
    q = value.as_rational()
    if q.denominator != 1 or q < 0:
        raise IncompleteSearch(
            f"class multiplication coefficient {q} is not a nonnegative integer")
    return int(q)


# ---------------------------------------------------------------------------
# closure of commuting products of p-elements


@dataclass(frozen=True)
class ClosedClassResult:
    closed: bool | None
    closure: tuple[int, ...] | None
    xi_certificate: bool | None
    xi_failures: tuple[tuple[int, int, int, int], ...]
    method: str


def closed_class_check(classes: ClassData, class_set: Iterable[int],
                       *, table: CharacterTable | None = None,
                       centralizer_bound: int = DEFAULT_CENTRALIZER_BOUND,
                       ) -> ClosedClassResult:
    """Is the set of classes closed under products of distinct commuting
    members (whenever the product again has order p)?

    The exact check enumerates, for a representative a of each working
    class, the members of working classes inside C_G(a); products of order p
    are classified and the working set grows to a closure.  When a character
    table is supplied, the xi-based sufficient certificate (xi(x, y, z) = 0
    for every order-p class z outside the set) is evaluated first; if the
    certificate fails and no group is attached to the class data, the result
    is indeterminate.
    """
    wanted = sorted(set(class_set))
    if not wanted:
        raise ValueError("empty class set")
    orders = {classes[i].element_order for i in wanted}
    if len(orders) != 1:
        raise ValueError(f"mixed element orders {sorted(orders)}")
    p = orders.pop()
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"element order {p} is not prime")

    xi_certificate = None
    xi_failures: list[tuple[int, int, int, int]] = []
    if table is not None:
        outside = [c.index for c in classes
                   if c.element_order == p and c.index not in wanted]
        xi_certificate = True
        for i in wanted:
            for j in wanted:
                if j < i:
                    continue
                for k in outside:
                    x = class_mult_coefficient(table, i, j, k)
                    if x:
                        xi_certificate = False
                        xi_failures.append((i, j, k, x))
        if xi_certificate:
            return ClosedClassResult(closed=True, closure=tuple(wanted),
                                     xi_certificate=True, xi_failures=(),
                                     method="xi-certificate")

    group = classes.group
    if group is None:
        return ClosedClassResult(closed=None, closure=None,
                                 xi_certificate=xi_certificate,
                                 xi_failures=tuple(xi_failures),
                                 method="indeterminate-by-xi")

    working = set(wanted)
    processed: set[int] = set()
    while True:
        todo = [i for i in sorted(working) if i not in processed]
        if not todo:
            break
        for i in todo:
            processed.add(i)
            a = classes[i].rep
            C = centralizer(group, a)
            if C.order > centralizer_bound:
                raise ResourceBoundExceeded(
                    f"centralizer order {C.order} exceeds bound",
                    bound_name="centralizer_bound",
                    bound_value=centralizer_bound)
            for b in C.elements(centralizer_bound):
                if b == a or perm_order(b) != p:
                    continue
                if classes.identify(b) not in working:
                    continue
                ab = compose(a, b)
                if perm_order(ab) != p:
                    continue
                kc = classes.identify(ab)
                if kc not in working:
                    working.add(kc)
    closure = tuple(sorted(working))
    return ClosedClassResult(closed=closure == tuple(wanted), closure=closure,
                             xi_certificate=xi_certificate,
                             xi_failures=tuple(xi_failures),
                             method="enumeration")
