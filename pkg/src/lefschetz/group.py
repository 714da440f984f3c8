"""Permutation groups via stabilizer chains (deterministic Schreier-Sims).

A ``PermGroup`` owns a base-and-strong-generating-set chain built eagerly and
deterministically from the generator list: no randomization, so identical
inputs give identical chains, orders, and enumeration orders.  Base points are
picked greedily from the largest cycle of the offending generator (shallower
transversal trees); a ``base_hint`` forces a prescribed base order instead,
which the minimal-coset-representative machinery uses with hint 0,1,2,...
"""

from __future__ import annotations

import random
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import ResourceBoundExceeded, ValidationError
from .perm import (
    Perm,
    compose,
    cycles,
    format_perm,
    identity,
    inverse,
    is_identity,
    commutator,
    conjugate,
    orbits_on_points,
)


class _Level:
    __slots__ = ("base", "transversal", "orbit", "tested")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.transversal: dict[int, Perm] = {base: identity(degree)}
        self.orbit: list[int] = [base]
        self.tested: set[tuple[int, int]] = set()  # (orbit point, global gen index)

    def extend_orbit(self, gens: Sequence[tuple[int, Perm]]) -> None:
        """Grow basic orbit/transversal under (index, perm) generator pairs."""
        frontier = list(self.orbit)
        while frontier:
            nxt = []
            for p in frontier:
                up = self.transversal[p]
                for _, g in gens:
                    q = g[p]
                    if q not in self.transversal:
                        self.transversal[q] = compose(up, g)
                        self.orbit.append(q)
                        nxt.append(q)
            frontier = nxt


class PermGroup:
    """Finite permutation group on {0..degree-1}."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]],
                 name: str | None = None, base_hint: Sequence[int] | None = None):
        self.degree = degree
        gens = []
        for g in generators:
            t = tuple(g)
            if len(t) != degree or sorted(t) != list(range(degree)):
                raise ValidationError(f"not a permutation of degree {degree}: {t!r}")
            if not is_identity(t):
                gens.append(t)
        self.generators: tuple[Perm, ...] = tuple(dict.fromkeys(gens))
        self.name = name
        self._base_hint = tuple(base_hint) if base_hint is not None else None
        self._levels: list[_Level] = []
        self._sgs: list[Perm] = []  # strong generating set, grows during build
        self._order: int | None = None
        self._element_set: frozenset | None = None
        self._build_chain()

    # chain construction

    def _pick_base_point(self, g: Perm) -> int:
        if self._base_hint is not None:
            fixed_prefix = [lvl.base for lvl in self._levels]
            for p in self._base_hint:
                if g[p] != p and p not in fixed_prefix:
                    return p
        # greedy: a point on the largest cycle of g (smallest such point).
        best = None
        for c in cycles(g):
            cand = min(c)
            if best is None or len(c) > best[0] or (len(c) == best[0] and cand < best[1]):
                best = (len(c), cand)
        assert best is not None
        return best[1]

    def _fixes_prefix(self, g: Perm, i: int) -> bool:
        return all(g[lvl.base] == lvl.base for lvl in self._levels[:i])

    def _effective_gens(self, i: int) -> list[tuple[int, Perm]]:
        """Strong generators lying in the level-i stabilizer, with global ids."""
        return [(k, g) for k, g in enumerate(self._sgs) if self._fixes_prefix(g, i)]

    def _register(self, g: Perm) -> int:
        """Append g to the SGS, adding a base point if g fixes the whole base.

        Returns the deepest level whose effective set gained g.
        """
        self._sgs.append(g)
        j = 0
        while j < len(self._levels) and g[self._levels[j].base] == self._levels[j].base:
            j += 1
        if j == len(self._levels):
            self._levels.append(_Level(self._pick_base_point(g), self.degree))
        for i in range(j + 1):
            self._levels[i].extend_orbit(self._effective_gens(i))
        return j

    def _build_chain(self) -> None:
        for g in self.generators:
            residue, _ = self._strip(g)
            if not is_identity(residue):
                self._register(residue)
        # Bottom-up verification: level i is accepted once every Schreier
        # generator of its basic orbit sifts to the identity through the
        # (already verified) deeper levels.
        i = len(self._levels) - 1
        while i >= 0:
            level = self._levels[i]
            eff = self._effective_gens(i)
            dirty = None
            pi = 0
            while pi < len(level.orbit):
                p = level.orbit[pi]
                for k, s in eff:
                    if (p, k) in level.tested:
                        continue
                    level.tested.add((p, k))
                    up = level.transversal[p]
                    schreier = compose(compose(up, s), inverse(level.transversal[s[p]]))
                    residue, _ = self._strip(schreier, i + 1)
                    if not is_identity(residue):
                        dirty = self._register(residue)
                        break
                if dirty is not None:
                    break
                pi += 1
            if dirty is not None:
                i = dirty  # deepest level whose generating set changed
            else:
                i -= 1
        self._order = None
        self._element_set = None

    def _strip(self, g: Perm, from_level: int = 0) -> tuple[Perm, int]:
        h = tuple(g)
        for i in range(from_level, len(self._levels)):
            level = self._levels[i]
            p = h[level.base]
            if p not in level.transversal:
                return h, i
            h = compose(h, inverse(level.transversal[p]))
        return h, len(self._levels)

    # queries

    @property
    def order(self) -> int:
        if self._order is None:
            n = 1
            for level in self._levels:
                n *= len(level.orbit)
            self._order = n
        return self._order

    @property
    def base(self) -> list[int]:
        return [level.base for level in self._levels]

    def __contains__(self, g: Sequence[int]) -> bool:
        t = tuple(g)
        if len(t) != self.degree:
            return False
        residue, _ = self._strip(t)
        return is_identity(residue)

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"PermGroup({label}, order {self.order}, {len(self.generators)} gens)"

    def __len__(self) -> int:
        return self.order

    def identity_perm(self) -> Perm:
        return identity(self.degree)

    def random_element(self, rng: random.Random) -> Perm:
        """Uniformly random element (product of random transversal reps)."""
        g = identity(self.degree)
        for level in reversed(self._levels):
            p = rng.choice(level.orbit)
            g = compose(g, level.transversal[p])
        return g

    def elements(self, limit: int | None = None) -> Iterator[Perm]:
        """All elements, deterministic chain-product order."""
        if limit is not None and self.order > limit:
            raise ResourceBoundExceeded(
                f"group order {self.order} exceeds enumeration bound {limit}",
                bound_name="element_enumeration", bound_value=limit)
        def rec(i: int) -> Iterator[Perm]:
            if i == len(self._levels):
                yield identity(self.degree)
                return
            level = self._levels[i]
            for h in rec(i + 1):
                for p in level.orbit:
                    yield compose(h, level.transversal[p])
        return rec(0)

    def element_set(self, limit: int | None = None) -> frozenset[Perm]:
        if self._element_set is None:
            self._element_set = frozenset(self.elements(limit))
        return self._element_set

    def orbit_of_point(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g[x]
                    if y not in seen:
                        seen.add(y)
                        out.append(y)
                        nxt.append(y)
            frontier = nxt
        return out

    def orbits(self) -> list[list[int]]:
        """Orbits on points, each sorted, listed by least element."""
        return orbits_on_points(self.degree, self.generators)

    def transporter_to_point(self, point: int, target: int) -> Perm | None:
        """Some g in G with g[point] == target, or None."""
        reps = {point: identity(self.degree)}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g[x]
                    if y not in reps:
                        reps[y] = compose(reps[x], g)
                        nxt.append(y)
            frontier = nxt
        return reps.get(target)

    def subgroup(self, gens: Iterable[Sequence[int]], name: str | None = None,
                 base_hint: Sequence[int] | None = None) -> "PermGroup":
        sub = PermGroup(self.degree, gens, name=name, base_hint=base_hint)
        return sub

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def normal_closure(self, seeds: Iterable[Sequence[int]]) -> "PermGroup":
        gens = [tuple(s) for s in seeds if not is_identity(s)]
        closure = PermGroup(self.degree, gens)
        queue = list(gens)
        while queue:
            s = queue.pop()
            for g in self.generators:
                c = conjugate(s, g)
                if c not in closure:
                    gens.append(c)
                    closure = PermGroup(self.degree, gens)
                    queue.append(c)
        return closure

    def derived_subgroup(self) -> "PermGroup":
        comms = []
        gs = self.generators
        for i in range(len(gs)):
            for j in range(len(gs)):
                if i != j:
                    comms.append(commutator(gs[i], gs[j]))
        return self.normal_closure(comms)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return all(conjugate(h, g) in self for h in self.generators
                   for g in other.generators)

    def conjugated(self, g: Sequence[int], name: str | None = None) -> "PermGroup":
        return PermGroup(self.degree, [conjugate(h, g) for h in self.generators], name=name)

    _MINREP_BOUND = 20000

    def minimal_coset_rep(self, g: Sequence[int]) -> Perm:
        """Lexicographically least element of the right coset (self)*g.

        Canonical coset key: Hg == Hg' iff the minimal representatives agree.
        Exact minimization over the subgroup's elements; bounded since every
        caller works with small point stabilizers/parabolics.
        """
        if not hasattr(self, "_elements_list"):
            self._elements_list = list(self.elements(self._MINREP_BOUND))
        gt = tuple(g)
        return min(compose(h, gt) for h in self._elements_list)

    def describe(self) -> str:
        gens = ", ".join(format_perm(g) for g in self.generators)
        return f"<{gens}>"


def generic_orbit(seed: Hashable, actions: Sequence[Callable[[Hashable], Hashable]],
                  limit: int | None = None) -> dict[Hashable, tuple[int, int]]:
    """Orbit of ``seed`` under unary actions; value = (parent index, action index).

    Returns insertion-ordered dict; parent of seed is (-1, -1).  Raises
    ResourceBoundExceeded when the orbit outgrows ``limit``.
    """
    out: dict[Hashable, tuple[int, int]] = {seed: (-1, -1)}
    order = [seed]
    frontier = [(seed, 0)]
    while frontier:
        nxt = []
        for key, idx in frontier:
            for ai, act in enumerate(actions):
                img = act(key)
                if img not in out:
                    if limit is not None and len(out) >= limit:
                        raise ResourceBoundExceeded(
                            f"orbit exceeds bound {limit}", bound_name="orbit",
                            bound_value=limit)
                    out[img] = (idx, ai)
                    order.append(img)
                    nxt.append((img, len(order) - 1))
        frontier = nxt
    return out
