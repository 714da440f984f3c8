"""Conjugacy classes: enumeration, canonical labels, power maps.

Two strategies.  Groups whose order fits the enumeration bound are fully
enumerated and partitioned into conjugation orbits; every element gets a
class index in a lookup table, and class labels are fully canonical (ties
broken by first appearance in the deterministic element enumeration).
Larger groups use seeded random sampling with power closure; each candidate
class is certified by an exact centralizer computation, and the run only
succeeds when the class sizes sum to the group order, so the random seed can
affect running time and the labels of classes with identical invariants,
but never sizes, centralizer orders or the partition itself.

Labels follow the usual convention: classes sorted by element order, then
class size, then cycle type, then first-hit; classes of element order n are
named "na", "nb", ... in that sort order.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from typing import Sequence

from .backtrack import centralizer, conjugating_element
from .errors import IncompleteSearch
from .group import PermGroup
from .perm import (
    Perm,
    as_bytes,
    cycle_type,
    identity,
    inverse,
    perm_order,
    perm_power,
)

DEFAULT_ENUM_LIMIT = 2_000_000
DEFAULT_RANDOM_TRIES = 50_000
DEFAULT_SEED = 1729


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    label: str
    rep: Perm
    size: int
    element_order: int
    centralizer_order: int
    cycle_type: tuple[int, ...]


def _letters(k: int) -> str:
    """0 -> a, 1 -> b, ..., 25 -> z, 26 -> aa, ..."""
    out = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        out = string.ascii_lowercase[r] + out
    return out


class ClassData:
    """The conjugacy classes of a group, in canonical order."""

    def __init__(self, group: PermGroup, classes: list[ConjugacyClass],
                 ident: dict[bytes, int] | None):
        self.group = group
        self.classes = classes
        self._ident = ident
        self._power_maps: dict[int, tuple[int, ...]] = {}
        self._by_label = {c.label: c.index for c in classes}

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i: int) -> ConjugacyClass:
        return self.classes[i]

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    def by_label(self, label: str) -> ConjugacyClass:
        return self.classes[self._by_label[label]]

    def identify(self, x: Sequence[int]) -> int:
        """Class index of x (x must belong to the group)."""
        if self.group is None and self._ident is None:
            raise ValueError(
                "class data was ingested without group elements; "
                "identify is unavailable")
        x = tuple(x)
        if self._ident is not None:
            key = as_bytes(x)
            if key not in self._ident:
                raise ValueError("element does not belong to the group")
            return self._ident[key]
        o = perm_order(x)
        ct = cycle_type(x)
        candidates = [c for c in self.classes
                      if c.element_order == o and c.cycle_type == ct]
        if len(candidates) == 1:
            return candidates[0].index
        for c in candidates:
            if conjugating_element(self.group, x, c.rep) is not None:
                return c.index
        raise ValueError("element does not match any known class")

    def power_map(self, k: int) -> tuple[int, ...]:
        """Map class index -> class index of the k-th powers."""
        if k not in self._power_maps:
            if self.group is None:
                self._power_maps[k] = self._derived_power_map(k)
            else:
                out = []
                for c in self.classes:
                    e = k % c.element_order
                    out.append(self.identify(perm_power(c.rep, e)))
                self._power_maps[k] = tuple(out)
        return self._power_maps[k]

    def _derived_power_map(self, k: int) -> tuple[int, ...]:
        """Compose ingested prime power maps to obtain the k-th power map."""
        if k < 0:
            inv = self._power_maps.get(-1)
            if inv is None:
                raise IncompleteSearch("inverse map was not ingested")
            fwd = self.power_map(-k)
            return tuple(inv[j] for j in fwd)
        if k == 0:
            one = next(c.index for c in self.classes if c.element_order == 1)
            return tuple(one for _ in self.classes)
        out = list(range(len(self.classes)))
        for p in _prime_factors(k):
            pm = self._power_maps.get(p)
            if pm is None:
                raise IncompleteSearch(
                    f"power map for prime {p} was not ingested")
            out = [pm[j] for j in out]
        return tuple(out)

    def inverse_map(self) -> tuple[int, ...]:
        return self.power_map(-1)

    def p_regular_indices(self, p: int) -> list[int]:
        return [c.index for c in self.classes if c.element_order % p != 0]

    def p_singular_indices(self, p: int) -> list[int]:
        return [c.index for c in self.classes if c.element_order % p == 0]

    def p_prime_part_map(self, p: int) -> tuple[int, ...]:
        """Map class index -> class index of the p'-parts of its elements."""
        if self.group is None:
            out = []
            for c in self.classes:
                o = c.element_order
                pa = 1
                while o % p == 0:
                    o //= p
                    pa *= p
                if pa == 1:
                    out.append(c.index)
                    continue
                j = c.index
                if o == 1:
                    out.append(self.power_map(0)[j])
                    continue
                for q in _prime_factors(pa * pow(pa, -1, o)):
                    j = self.power_map(q)[j]
                out.append(j)
            return tuple(out)
        return tuple(self.identify(p_prime_part(c.rep, p)) for c in self.classes)

    @property
    def element_to_class(self) -> dict[bytes, int] | None:
        """Full lookup table (bytes of element -> class index), if enumerated."""
        return self._ident


def _prime_factors(k: int):
    """Prime factors of k > 0 with multiplicity, ascending."""
    d = 2
    while d * d <= k:
        while k % d == 0:
            yield d
            k //= d
        d += 1
    if k > 1:
        yield k


def _order_split(x: Perm, p: int) -> tuple[int, int]:
    """order(x) = p^a * m with p coprime to m; returns (p^a, m)."""
    o = perm_order(x)
    pa = 1
    while o % p == 0:
        o //= p
        pa *= p
    return pa, o


def p_part(x: Sequence[int], p: int) -> Perm:
    """The p-part of x: the factor of p-power order in x = x_p x_{p'}."""
    x = tuple(x)
    pa, m = _order_split(x, p)
    if m == 1:
        return x
    if pa == 1:
        return identity(len(x))
    return perm_power(x, m * pow(m, -1, pa))


def p_prime_part(x: Sequence[int], p: int) -> Perm:
    """The p'-part of x: the p-regular factor in x = x_p x_{p'}."""
    x = tuple(x)
    pa, m = _order_split(x, p)
    if pa == 1:
        return x
    if m == 1:
        return identity(len(x))
    return perm_power(x, pa * pow(pa, -1, m))


def _label(enriched: list[tuple], group_order: int) -> list[ConjugacyClass]:
    classes = []
    counts: dict[int, int] = {}
    for idx, (o, size, ct, _first, rep) in enumerate(enriched):
        k = counts.get(o, 0)
        counts[o] = k + 1
        classes.append(ConjugacyClass(
            index=idx, label=f"{o}{_letters(k)}", rep=rep, size=size,
            element_order=o, centralizer_order=group_order // size,
            cycle_type=ct))
    return classes


def _enumerated_classes(G: PermGroup, enum_limit: int) -> ClassData:
    n = G.degree
    if n > 255:
        raise ValueError("full enumeration requires degree <= 255")
    gens = list(G.generators)
    suffix = bytes(range(n, 256))
    g_tables = [as_bytes(g) + suffix for g in gens]
    inv_bases = [as_bytes(inverse(g)) for g in gens]
    ident: dict[bytes, int] = {}
    seeds: list[tuple[Perm, int, int]] = []  # rep, size, first-hit position
    pos = 0
    for x in G.elements(enum_limit):
        key = as_bytes(x)
        if key in ident:
            pos += 1
            continue
        cls_idx = len(seeds)
        ident[key] = cls_idx
        frontier = [key]
        size = 1
        while frontier:
            nxt = []
            for k in frontier:
                padded = k + suffix
                for gi in range(len(gens)):
                    img = inv_bases[gi].translate(padded).translate(g_tables[gi])
                    if img not in ident:
                        ident[img] = cls_idx
                        nxt.append(img)
                        size += 1
            frontier = nxt
        seeds.append((x, size, pos))
        pos += 1
    if sum(s for _, s, _ in seeds) != G.order:
        raise IncompleteSearch("class partition does not cover the group")
    enriched = [(perm_order(rep), size, cycle_type(rep), first, rep)
                for rep, size, first in seeds]
    enriched.sort(key=lambda t: t[:4])
    old_to_new = {ident[as_bytes(rep)]: new_idx
                  for new_idx, (_, _, _, _, rep) in enumerate(enriched)}
    ident = {k: old_to_new[v] for k, v in ident.items()}
    return ClassData(G, _label(enriched, G.order), ident)


def _randomized_classes(G: PermGroup, seed: int, max_tries: int) -> ClassData:
    rng = random.Random(seed)
    found: list[tuple[Perm, int, int]] = []  # rep, centralizer order, found order
    total = 0

    def lookup(x: Perm) -> int | None:
        o = perm_order(x)
        ct = cycle_type(x)
        for i, (rep, _, _) in enumerate(found):
            if perm_order(rep) == o and cycle_type(rep) == ct:
                if conjugating_element(G, x, rep) is not None:
                    return i
        return None

    def register(x: Perm) -> None:
        nonlocal total
        if total == G.order or lookup(x) is not None:
            return
        C = centralizer(G, x)
        found.append((x, C.order, len(found)))
        total += G.order // C.order
        for k in range(2, perm_order(x)):
            register(perm_power(x, k))

    register(identity(G.degree))
    tries = 0
    while total < G.order:
        if tries >= max_tries:
            raise IncompleteSearch(
                f"class search incomplete after {max_tries} samples: "
                f"found {len(found)} classes covering {total} of {G.order}")
        register(G.random_element(rng))
        tries += 1
    enriched = [(perm_order(rep), G.order // c_order, cycle_type(rep), first, rep)
                for rep, c_order, first in found]
    enriched.sort(key=lambda t: t[:4])
    return ClassData(G, _label(enriched, G.order), None)


def conjugacy_classes(G: PermGroup, *, enum_limit: int = DEFAULT_ENUM_LIMIT,
                      seed: int = DEFAULT_SEED,
                      max_tries: int = DEFAULT_RANDOM_TRIES) -> ClassData:
    """All conjugacy classes of G with canonical labels.

    Every class comes with exact size and centralizer order; completeness is
    certified by the class equation summing to |G|.
    """
    if G.order <= enum_limit and G.degree <= 255:
        return _enumerated_classes(G, enum_limit)
    return _randomized_classes(G, seed, max_tries)
