"""Exact arithmetic in cyclotomic fields.

A value is stored against the tensor basis of prime-power cyclotomic fields:
for conductor n = prod p^a, the basis elements are products of local powers
zeta_{p^a}^t with 0 <= t < phi(p^a).  Each local power basis is a genuine
Q-basis (and a Z-basis of the ring of integers), so equality, rationality and
integrality are structural properties of the normal form: no floating point,
no symbolic simplifier.

The reduction rule per prime power comes from the minimal polynomial
Phi_{p^a}(x) = sum_{i<p} x^{i p^{a-1}}: for t >= phi(p^a),

    zeta^t = - sum_{i=0}^{p-2} zeta^{t - phi(p^a) + i p^{a-1}},

whose exponents all lie inside the basis range.

Values print (and parse) in root-of-unity notation: sums of c*E(n)^k with
E(n) = exp(2 pi i / n) and n the minimal conductor.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd
from typing import Iterable, Union

from .errors import ValidationError

Rat = Union[int, Fraction]


@lru_cache(maxsize=None)
def _phi_pp(p: int, a: int) -> int:
    return p ** (a - 1) * (p - 1)


@lru_cache(maxsize=None)
def _reduction_table(p: int, a: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each t in [0, p^a): the basis expansion of zeta^t as (exp, sign)."""
    q = p ** a
    phi = _phi_pp(p, a)
    step = p ** (a - 1)
    table = []
    for t in range(q):
        if t < phi:
            table.append(((t, 1),))
        else:
            table.append(tuple((t - phi + i * step, -1) for i in range(p - 1)))
    return tuple(table)


def _factor_prime_powers(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class Cyc:
    """An element of a cyclotomic field, in canonical normal form."""

    __slots__ = ("primes", "terms", "_hash")

    def __init__(self, value: Rat = 0):
        if isinstance(value, Cyc):
            self.primes = value.primes
            self.terms = value.terms
            self._hash = value._hash
            return
        q = Fraction(value)
        self.primes = ()
        self.terms = {(): q} if q else {}
        self._hash = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def _raw(primes: tuple[tuple[int, int], ...],
             terms: dict[tuple[int, ...], Fraction]) -> "Cyc":
        terms = {e: c for e, c in terms.items() if c}
        primes, terms = _minimize(primes, terms)
        out = object.__new__(Cyc)
        out.primes = primes
        out.terms = terms
        out._hash = None
        return out

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "Cyc":
        """E(n)^k = exp(2 pi i k / n)."""
        if n <= 0:
            raise ValueError("root order must be positive")
        k %= n
        primes = _factor_prime_powers(n)
        # zeta_n^k = prod_p zeta_{p^a}^(k * inv(n/p^a) mod p^a)
        exps = []
        for p, a in primes:
            q = p ** a
            m = n // q
            t = (k * pow(m, -1, q)) % q
            exps.append(t)
        terms: dict[tuple[int, ...], Fraction] = {}
        _accumulate(terms, primes, tuple(exps), Fraction(1))
        return Cyc._raw(primes, terms)

    @staticmethod
    def from_terms(pairs: Iterable[tuple[Rat, int, int]]) -> "Cyc":
        """Sum of coeff * E(n)^k monomials."""
        out = Cyc(0)
        for coeff, n, k in pairs:
            out = out + Cyc.root_of_unity(n, k) * Fraction(coeff)
        return out

    # -- structure --------------------------------------------------------

    @property
    def conductor(self) -> int:
        out = 1
        for p, a in self.primes:
            out *= p ** a
        # a conductor divisible by 2 exactly once never occurs in this
        # normal form (zeta_2 = -1 is rational), matching the convention
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.primes

    def as_rational(self) -> Fraction:
        if self.primes:
            raise ValueError(f"{self} is not rational")
        return self.terms.get((), Fraction(0))

    def is_integral(self) -> bool:
        """True when the value is an algebraic integer."""
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic -------------------------------------------------------

    def _promoted(self, primes: tuple[tuple[int, int], ...]) -> dict:
        """Re-index terms against a finer prime support (no reduction needed)."""
        if primes == self.primes:
            return dict(self.terms)
        pos = {p: i for i, (p, _) in enumerate(self.primes)}
        scale = []
        for p, a in primes:
            if p in pos:
                i = pos[p]
                scale.append((i, p ** (a - self.primes[i][1])))
            else:
                scale.append((-1, 0))
        out = {}
        for exps, c in self.terms.items():
            new = tuple(exps[i] * s if i >= 0 else 0 for i, s in scale)
            out[new] = c
        return out

    def __add__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        primes = _merge_primes(self.primes, other.primes)
        terms = self._promoted(primes)
        for e, c in other._promoted(primes).items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Cyc._raw(primes, terms)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc._raw(self.primes, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyc":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            q = other.as_rational()
            return Cyc._raw(self.primes,
                            {e: c * q for e, c in self.terms.items()})
        if self.is_rational():
            return other * self.as_rational()
        primes = _merge_primes(self.primes, other.primes)
        a_terms = self._promoted(primes)
        b_terms = other._promoted(primes)
        mods = [p ** a for p, a in primes]
        terms: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in a_terms.items():
            for eb, cb in b_terms.items():
                exps = tuple((x + y) % m for x, y, m in zip(ea, eb, mods))
                _accumulate(terms, primes, exps, ca * cb)
        return Cyc._raw(primes, terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if not other.is_rational():
                raise TypeError("division only by rational values")
            other = other.as_rational()
        q = Fraction(other)
        if not q:
            raise ZeroDivisionError("division by zero")
        return self * Fraction(q.denominator, q.numerator)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.primes == other.primes and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.primes, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- Galois -----------------------------------------------------------

    def galois(self, k: int) -> "Cyc":
        """Image under zeta_n -> zeta_n^k, for k coprime to the conductor."""
        n = self.conductor
        if n == 1:
            return self
        if gcd(k, n) != 1:
            raise ValueError(f"galois exponent {k} not coprime to conductor {n}")
        mods = [p ** a for p, a in self.primes]
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            new = tuple((k * t) % m for t, m in zip(exps, mods))
            _accumulate(terms, self.primes, new, c)
        return Cyc._raw(self.primes, terms)

    def conjugate(self) -> "Cyc":
        """Complex conjugation."""
        return self.galois(-1 % max(self.conductor, 2)) if self.primes else self

    def galois_orbit_sum(self) -> "Cyc":
        n = self.conductor
        out = Cyc(0)
        for k in range(1, max(n, 2)):
            if gcd(k, n) == 1:
                out = out + self.galois(k)
        return out

    # -- export -----------------------------------------------------------

    def to_root_coeffs(self) -> tuple[int, dict[int, Fraction]]:
        """(n, {k: c}) with value == sum c * E(n)^k, n the conductor."""
        n = self.conductor
        if n == 1:
            q = self.as_rational()
            return 1, ({0: q} if q else {})
        out: dict[int, Fraction] = {}
        # zeta_{p^a} = zeta_n^(n/p^a), so a basis monomial with local
        # exponents t_i is E(n)^k with k = sum t_i * n/q_i mod n
        weights = [n // (p ** a) for p, a in self.primes]
        for exps, c in self.terms.items():
            k = sum(t * w for t, w in zip(exps, weights)) % n
            out[k] = c
        return n, out

    def __repr__(self) -> str:
        return f"Cyc({self})"

    def __str__(self) -> str:
        n, coeffs = self.to_root_coeffs()
        if not coeffs:
            return "0"
        bits = []
        for k in sorted(coeffs):
            c = coeffs[k]
            if n == 1 or k == 0:
                mono = None
            elif k == 1:
                mono = f"E({n})"
            else:
                mono = f"E({n})^{k}"
            if mono is None:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = f"-{mono}"
            else:
                piece = f"{c}*{mono}"
            if bits and not piece.startswith("-"):
                bits.append("+" + piece)
            else:
                bits.append(piece)
        return "".join(bits)


def _coerce(value) -> "Cyc":
    if isinstance(value, Cyc):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyc(value)
    return NotImplemented


def _merge_primes(a, b):
    got = dict(a)
    for p, k in b:
        got[p] = max(got.get(p, 0), k)
    return tuple(sorted(got.items()))


def _accumulate(terms: dict, primes, exps: tuple[int, ...], coeff: Fraction):
    """Add coeff * prod zeta^{exps} to terms, expanding out-of-basis powers."""
    expansions = []
    for (p, a), t in zip(primes, exps):
        expansions.append(_reduction_table(p, a)[t])
    for combo in iproduct(*expansions):
        e = tuple(x for x, _ in combo)
        sign = 1
        for _, s in combo:
            sign *= s
        terms[e] = terms.get(e, Fraction(0)) + coeff * sign


def _minimize(primes, terms):
    """Lower each coordinate into the smallest cyclotomic subfield."""
    if not terms:
        return (), {}
    primes = list(primes)
    changed = True
    while changed and primes:
        changed = False
        for i in range(len(primes) - 1, -1, -1):
            p, a = primes[i]
            if all(e[i] % p == 0 for e in terms):
                if a == 1:
                    primes.pop(i)
                    terms = {e[:i] + e[i + 1:]: c for e, c in terms.items()}
                else:
                    primes[i] = (p, a - 1)
                    terms = {e[:i] + (e[i] // p,) + e[i + 1:]: c
                             for e, c in terms.items()}
                changed = True
    return tuple(primes), terms


# ---------------------------------------------------------------------------
# parsing of sums of c*E(n)^k monomials


_TOKEN = re.compile(r"\s*([+-]|\d+/\d+|\d+|E\(\d+\)(\^\d+)?|\*)")
_MONO = re.compile(r"E\((\d+)\)(?:\^(\d+))?$")


def parse_cyc(text: str, *, line: int | None = None) -> Cyc:
    """Parse '2*E(7)^3-E(7)+1/2' style expressions."""
    pos = 0
    total = Cyc(0)
    sign = 1
    coeff: Fraction | None = None
    mono: Cyc | None = None
    pending = False
    after_star = False

    def flush():
        nonlocal total, sign, coeff, mono, pending
        if not pending:
            return
        c = coeff if coeff is not None else Fraction(1)
        m = mono if mono is not None else Cyc(1)
        total = total + m * (c * sign)
        sign, coeff, mono, pending = 1, None, None, False

    text = text.strip()
    if not text:
        raise ValidationError("empty cyclotomic value", line=line)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValidationError(
                f"bad cyclotomic syntax at column {pos + 1}: {text[pos:pos+10]!r}",
                line=line, column=pos + 1)
        tok = m.group(1)
        pos = m.end()
        if tok in "+-":
            if after_star:
                raise ValidationError("dangling '*' in cyclotomic value",
                                      line=line, column=pos)
            if pending and (coeff is not None or mono is not None):
                flush()
            sign = -sign if tok == "-" else sign
            pending = True
        elif tok == "*":
            if after_star or coeff is None or mono is not None:
                raise ValidationError("misplaced '*' in cyclotomic value",
                                      line=line, column=pos)
            after_star = True
        elif tok.startswith("E"):
            em = _MONO.match(tok)
            n = int(em.group(1))
            k = int(em.group(2)) if em.group(2) else 1
            if n == 0:
                raise ValidationError("E(0) is not a root of unity",
                                      line=line, column=pos)
            if mono is not None:
                raise ValidationError("two roots in one monomial; expand first",
                                      line=line, column=pos)
            mono = Cyc.root_of_unity(n, k)
            pending = True
            after_star = False
        else:
            if coeff is not None or mono is not None:
                raise ValidationError("two coefficients in one monomial",
                                      line=line, column=pos)
            coeff = Fraction(tok)
            pending = True
            after_star = False
    if after_star:
        raise ValidationError("dangling '*' in cyclotomic value",
                              line=line, column=pos)
    flush()
    return total
