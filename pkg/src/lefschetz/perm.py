"""Permutations of {0..n-1} as image tuples, with 1-based cycle serialization.

Group elements are plain ``tuple[int, ...]`` so they hash and compare fast and
can key dictionaries.  Composition is left-to-right: ``compose(g, h)`` acts as
"g then h", i.e. ``compose(g, h)[x] == h[g[x]]``, so point images satisfy
``x^(gh) = (x^g)^h``.  Hot loops over groups of degree <= 255 use ``bytes``
images and ``bytes.translate`` (see ``as_bytes``/``compose_bytes``).
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError

Perm = tuple  # images; alias for readability in signatures


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def compose(g: Sequence[int], h: Sequence[int]) -> Perm:
    """g then h."""
    return tuple(h[x] for x in g)


def compose_many(*perms: Sequence[int]) -> Perm:
    out = perms[0]
    for p in perms[1:]:
        out = compose(out, p)
    return tuple(out)


def inverse(g: Sequence[int]) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def conjugate(p: Sequence[int], g: Sequence[int]) -> Perm:
    """g^-1 p g, the conjugate of p by g (acts as p does, relabelled by g)."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[g[i]] = g[x]
    return tuple(out)


def commutator(a: Sequence[int], b: Sequence[int]) -> Perm:
    """a^-1 b^-1 a b."""
    n = len(a)
    out = [0] * n
    # out[x] for x = a^-1 b^-1 applied... compute pointwise: x -> a[b[x?]]
    # Direct: c = inv(a) o inv(b) o a o b evaluated left-to-right on points.
    ia = inverse(a)
    ib = inverse(b)
    for x in range(n):
        out[x] = b[a[ib[ia[x]]]]
    return tuple(out)


def perm_power(g: Sequence[int], k: int) -> Perm:
    n = len(g)
    if k < 0:
        return perm_power(inverse(g), -k)
    out = identity(n)
    base = tuple(g)
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def cycles(g: Sequence[int], *, include_fixed: bool = False) -> list[tuple[int, ...]]:
    """Disjoint cycles, each rotated to start at its least point, sorted."""
    n = len(g)
    seen = [False] * n
    out: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = g[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = g[x]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def cycle_type(g: Sequence[int]) -> tuple[int, ...]:
    """Multiset of cycle lengths > 1, descending (fixed points omitted)."""
    lens = sorted((len(c) for c in cycles(g)), reverse=True)
    return tuple(lens)


def perm_order(g: Sequence[int]) -> int:
    return lcm(*(len(c) for c in cycles(g))) if cycle_type(g) else 1


def moved_points(g: Sequence[int]) -> list[int]:
    return [i for i, x in enumerate(g) if x != i]


def perm_from_cycles(cyclist: Iterable[Sequence[int]], degree: int) -> Perm:
    img = list(range(degree))
    touched = set()
    for cyc in cyclist:
        for i, pt in enumerate(cyc):
            if not (0 <= pt < degree):
                raise ValidationError(f"point {pt + 1} out of range 1..{degree}")
            if pt in touched:
                raise ValidationError(f"point {pt + 1} repeated across cycles")
            touched.add(pt)
            img[pt] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_TOKEN_RE = re.compile(r"^\s*(\(([^()]*)\)\s*)+$")


def parse_perm(text: str, degree: int, *, line: int | None = None) -> Perm:
    """Parse 1-based cycle notation like ``(1,2,3)(4,5)`` or ``()``."""
    s = text.strip()
    if s in ("()", "id", ""):
        return identity(degree)
    if not _TOKEN_RE.match(s):
        col = _bad_column(s)
        raise ValidationError(f"malformed cycle notation {text!r}", line=line, column=col)
    cyclist = []
    for m in _CYCLE_RE.finditer(s):
        body = m.group(1).strip()
        if not body:
            continue
        parts = [p.strip() for p in body.split(",")]
        try:
            pts = [int(p) for p in parts]
        except ValueError:
            raise ValidationError(f"non-integer point in cycle {m.group(0)!r}", line=line,
                                  column=m.start() + 1) from None
        if len(set(pts)) != len(pts):
            raise ValidationError(f"repeated point inside cycle {m.group(0)!r}", line=line,
                                  column=m.start() + 1)
        cyclist.append([p - 1 for p in pts])
    try:
        return perm_from_cycles(cyclist, degree)
    except ValidationError as exc:
        raise ValidationError(str(exc), line=line) from None


def _bad_column(s: str) -> int:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                return i + 1
        elif not (ch.isdigit() or ch in ", \t") and depth >= 0:
            return i + 1
    return len(s)


def format_perm(g: Sequence[int]) -> str:
    """1-based disjoint cycle string; identity prints as ``()``."""
    cycs = cycles(g)
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycs)


# bytes fast path (degree <= 255): composition via C-level translate.

def as_bytes(g: Sequence[int]) -> bytes:
    return bytes(g)


def from_bytes(b: bytes) -> Perm:
    return tuple(b)


def compose_bytes(g: bytes, h: bytes) -> bytes:
    """g then h, both length-n bytes with n <= 255... h padded on demand."""
    return g.translate(h + bytes(range(len(h), 256)))


def translate_table(h: Sequence[int] | bytes) -> bytes:
    """256-byte table for repeated ``g.translate(table)`` composition."""
    hb = bytes(h)
    return hb + bytes(range(len(hb), 256))


def inverse_bytes(g: bytes) -> bytes:
    inv = bytearray(len(g))
    for i, x in enumerate(g):
        inv[x] = i
    return bytes(inv)


def orbit(points: Iterable[int], gens: Sequence[Sequence[int]]) -> set[int]:
    seen = set(points)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def orbits_on_points(degree: int, gens: Sequence[Sequence[int]]) -> list[list[int]]:
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
                        nxt.append(y)
            frontier = nxt
        out.append(sorted(orb))
    return out


def iter_words(gens: Sequence[Perm], degree: int) -> Iterator[Perm]:
    """Breadth-first enumeration of the generated group in word order.

    Deterministic given the generator list; used for canonical first-hit
    representatives.  Yields the identity first.  Caller bounds consumption.
    """
    ident = identity(degree)
    seen = {ident}
    yield ident
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = compose(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
                    yield wg
        frontier = nxt
