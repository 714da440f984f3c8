"""Centralizers, conjugacy witnesses and normalizers by backtrack search.

Two engines cooperate.  The orbit-stabilizer engine enumerates a conjugation
orbit with a transversal and sifts Schreier generators into the growing
stabilizer; it is exact and quick when the orbit (= index of the result) is
small.  The cycle-forced DFS walks the stabilizer chain of G assigning images
to base points; fixing the image of one point of a cycle of x forces the
image of the whole cycle, which collapses the search tree at small degree.

Conventions: composition is left-to-right and conjugation x^g = g^-1 x g acts
on the right, so x^(gh) = (x^g)^h.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .errors import IncompleteSearch, ResourceBoundExceeded
from .group import PermGroup
from .perm import (
    Perm,
    as_bytes,
    compose,
    compose_bytes,
    conjugate,
    cycle_type,
    from_bytes,
    identity,
    inverse,
    inverse_bytes,
    is_identity,
    perm_order,
    perm_power,
)

DEFAULT_ENUM_LIMIT = 200_000
DEFAULT_ORBIT_LIMIT = 400_000
DEFAULT_NODE_LIMIT = 2_000_000

_PAD = {}


def _pad_suffix(n: int) -> bytes:
    if n not in _PAD:
        _PAD[n] = bytes(range(n, 256))
    return _PAD[n]


def _conj_orbit(G: PermGroup, x: Perm, *, stop_at: Perm | None = None,
                limit: int = DEFAULT_ORBIT_LIMIT, want_stabilizer: bool = True):
    """BFS the conjugation orbit {x^g : g in G}.

    With stop_at=None returns (stabilizer PermGroup, orbit size); otherwise
    returns a transporter g with x^g == stop_at, or None when the orbit
    closes without reaching it.  Transversal invariant: x^(u[k]) == k.
    """
    n = G.degree
    small = n <= 255
    suffix = _pad_suffix(n) if small else None
    gens = list(G.generators)
    if small:
        inv_bases = [as_bytes(inverse(g)) for g in gens]
        g_tables = [as_bytes(g) + suffix for g in gens]
        key0 = as_bytes(x)
        u0 = as_bytes(identity(n))
    else:
        key0 = tuple(x)
        u0 = identity(n)
    target = None
    if stop_at is not None:
        target = as_bytes(stop_at) if small else tuple(stop_at)
        if target == key0:
            return identity(n)
    transversal = {key0: u0}
    order = [key0]
    qi = 0
    while qi < len(order):
        key = order[qi]
        qi += 1
        u = transversal[key]
        padded = key + suffix if small else None
        for gi, g in enumerate(gens):
            if small:
                img = inv_bases[gi].translate(padded).translate(g_tables[gi])
            else:
                img = tuple(conjugate(key, g))
            if img not in transversal:
                if len(transversal) >= limit:
                    raise ResourceBoundExceeded(
                        f"conjugation orbit exceeds {limit}",
                        bound_name="conjugation_orbit", bound_value=limit)
                newu = compose_bytes(u, as_bytes(g)) if small else compose(u, g)
                transversal[img] = newu
                order.append(img)
                if target is not None and img == target:
                    return from_bytes(newu) if small else newu
    if target is not None:
        return None
    if not want_stabilizer:
        return None, len(order)
    if G.order % len(order) != 0:
        raise IncompleteSearch("conjugation orbit size does not divide group order")
    expected = G.order // len(order)
    stab_gens: list[Perm] = []
    stab = PermGroup(n, [])
    for key in order:
        u = transversal[key]
        padded = key + suffix if small else None
        for gi, g in enumerate(gens):
            if small:
                img = inv_bases[gi].translate(padded).translate(g_tables[gi])
                w = transversal[img]
                schreier = from_bytes(compose_bytes(compose_bytes(u, as_bytes(g)),
                                                    inverse_bytes(w)))
            else:
                img = tuple(conjugate(key, g))
                w = transversal[img]
                schreier = compose(compose(u, g), inverse(w))
            if not is_identity(schreier) and schreier not in stab:
                stab_gens.append(schreier)
                stab = PermGroup(n, stab_gens)
                if stab.order == expected:
                    return stab, len(order)
    if stab.order != expected:
        raise IncompleteSearch("orbit-stabilizer generators incomplete")
    return stab, len(order)


class _ConjSearch:
    """DFS over the stabilizer chain for c with xs[i]^c == ys[i] for all i.

    find_all mode collects the full subgroup (xs == ys) by restarting with a
    growing known subgroup K: at the root level only K-orbit-minimal images
    are explored, and each leaf element outside K enlarges K.
    """

    def __init__(self, G: PermGroup, xs: Sequence[Perm], ys: Sequence[Perm],
                 node_limit: int = DEFAULT_NODE_LIMIT):
        self.G = G
        self.n = G.degree
        self.xs = [tuple(x) for x in xs]
        self.ys = [tuple(y) for y in ys]
        self.levels = G._levels
        self.node_limit = node_limit
        self.nodes = 0
        # cycle-length profiles: images must match them pointwise
        self.xprof = self._profiles(self.xs)
        self.yprof = self._profiles(self.ys)

    def _profiles(self, elts):
        prof = [[0] * len(elts) for _ in range(self.n)]
        for ei, e in enumerate(elts):
            seen = [False] * self.n
            for p0 in range(self.n):
                if seen[p0]:
                    continue
                cyc = [p0]
                seen[p0] = True
                q = e[p0]
                while q != p0:
                    seen[q] = True
                    cyc.append(q)
                    q = e[q]
                for p in cyc:
                    prof[p][ei] = len(cyc)
        return [tuple(row) for row in prof]

    def _force(self, p0: int, q0: int, pmap, pinv, trail) -> bool:
        stack = [(p0, q0)]
        while stack:
            p, q = stack.pop()
            if pmap[p] != -1:
                if pmap[p] != q:
                    return False
                continue
            if pinv[q] != -1:
                return False
            if self.xprof[p] != self.yprof[q]:
                return False
            pmap[p] = q
            pinv[q] = p
            trail.append((p, q))
            for x, y in zip(self.xs, self.ys):
                stack.append((x[p], y[q]))
        return True

    def search(self, *, find_all: bool, seed_gens: Iterable[Perm] = ()):
        """find_all=False: first witness or None.  find_all=True: PermGroup."""
        if not find_all:
            return self._run(None, None)
        K_gens = [tuple(g) for g in seed_gens if not is_identity(g)]
        while True:
            K = PermGroup(self.n, K_gens)
            kmin = list(range(self.n))
            for orb in K.orbits():
                m = min(orb)
                for p in orb:
                    kmin[p] = m
            found = self._run(K, kmin)
            if found is None:
                return K
            K_gens.append(found)

    def _run(self, K, kmin):
        pmap = [-1] * self.n
        pinv = [-1] * self.n
        w = identity(self.n)
        return self._dfs(0, w, w, pmap, pinv, K, kmin)

    def _dfs(self, i, w, winv, pmap, pinv, K, kmin):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise ResourceBoundExceeded(
                f"backtrack search exceeds {self.node_limit} nodes",
                bound_name="backtrack_nodes", bound_value=self.node_limit)
        if i == len(self.levels):
            c = w
            for x, y in zip(self.xs, self.ys):
                if conjugate(x, c) != y:
                    return None
            if K is not None and c in K:
                return None
            return c
        level = self.levels[i]
        b = level.base
        forced = pmap[b]
        if forced != -1:
            delta = winv[forced]
            if delta not in level.transversal:
                return None
            pairs = [(delta, forced)]
        else:
            pairs = []
            for delta in level.orbit:
                beta = w[delta]
                if pinv[beta] != -1 or self.xprof[b] != self.yprof[beta]:
                    continue
                if i == 0 and K is not None and kmin[beta] != beta:
                    continue
                pairs.append((delta, beta))
        for delta, beta in pairs:
            trail: list[tuple[int, int]] = []
            if forced != -1 or self._force(b, beta, pmap, pinv, trail):
                new_w = compose(level.transversal[delta], w)
                res = self._dfs(i + 1, new_w, inverse(new_w), pmap, pinv, K, kmin)
                if res is not None:
                    return res
            for p, q in trail:
                pmap[p] = -1
                pinv[q] = -1
        return None


def centralizer(G: PermGroup, x: Sequence[int], *, enum_limit: int = DEFAULT_ENUM_LIMIT,
                node_limit: int = DEFAULT_NODE_LIMIT,
                orbit_limit: int = DEFAULT_ORBIT_LIMIT,
                strategy: str = "auto") -> PermGroup:
    """C_G(x) = {g in G : xg == gx}."""
    x = tuple(x)
    if all(compose(g, x) == compose(x, g) for g in G.generators):
        return G
    if strategy == "auto":
        strategy = "enum" if G.order <= enum_limit else "backtrack"
    if strategy == "enum":
        xb = as_bytes(x)
        gens: list[Perm] = []
        K = PermGroup(G.degree, [])
        for g in G.elements(enum_limit):
            gb = as_bytes(g)
            if compose_bytes(gb, xb) == compose_bytes(xb, gb) and g not in K:
                gens.append(g)
                K = PermGroup(G.degree, gens)
        return K
    if strategy == "backtrack":
        seeds = [x] if x in G else []
        try:
            return _ConjSearch(G, [x], [x], node_limit).search(
                find_all=True, seed_gens=seeds)
        except ResourceBoundExceeded:
            stab, _ = _conj_orbit(G, x, limit=orbit_limit)
            return stab
    if strategy == "orbit":
        stab, _ = _conj_orbit(G, x, limit=orbit_limit)
        return stab
    raise ValueError(f"unknown centralizer strategy {strategy!r}")


def centralizer_of_subgroup(G: PermGroup, H: PermGroup, **kw) -> PermGroup:
    """C_G(H) by iterated element centralizers over H's generators."""
    C = G
    for h in H.generators:
        if is_identity(h):
            continue
        C = centralizer(C, h, **kw)
    return C


def conjugating_element(G: PermGroup, x: Sequence[int], y: Sequence[int], *,
                        node_limit: int = DEFAULT_NODE_LIMIT) -> Perm | None:
    """Some g in G with x^g == y, or None."""
    x, y = tuple(x), tuple(y)
    if cycle_type(x) != cycle_type(y):
        return None
    if x == y:
        return identity(G.degree)
    return _ConjSearch(G, [x], [y], node_limit).search(find_all=False)


def simultaneous_conjugating_element(G: PermGroup, xs: Sequence[Sequence[int]],
                                     ys: Sequence[Sequence[int]], *,
                                     node_limit: int = DEFAULT_NODE_LIMIT) -> Perm | None:
    """Some g in G with xs[i]^g == ys[i] for every i, or None."""
    xs = [tuple(x) for x in xs]
    ys = [tuple(y) for y in ys]
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    for x, y in zip(xs, ys):
        if cycle_type(x) != cycle_type(y):
            return None
    if xs == ys:
        return identity(G.degree)
    return _ConjSearch(G, xs, ys, node_limit).search(find_all=False)


def is_conjugate(G: PermGroup, x: Sequence[int], y: Sequence[int], **kw) -> bool:
    return conjugating_element(G, x, y, **kw) is not None


class _NormalizerSearch:
    """DFS over the stabilizer chain for c with H^c == H (fallback engine).

    Pruning: images must respect H-orbit sizes, the induced map on H-orbits
    must stay injective and size-preserving, and at the root only K-orbit
    minimal images are explored for the growing known subgroup K <= N.
    """

    def __init__(self, G: PermGroup, H: PermGroup, node_limit: int):
        self.G = G
        self.H = H
        self.n = G.degree
        self.levels = G._levels
        self.node_limit = node_limit
        self.nodes = 0
        self.orb_id = [0] * self.n
        self.orb_size = [0] * self.n
        orbs = H.orbits()
        for oi, orb in enumerate(orbs):
            for p in orb:
                self.orb_id[p] = oi
                self.orb_size[p] = len(orb)
        self.num_orbs = len(orbs)

    def search(self, seed_gens: Iterable[Perm]) -> PermGroup:
        K_gens = [tuple(g) for g in seed_gens if not is_identity(g)]
        for h in self.H.generators:
            if not is_identity(h):
                K_gens.append(tuple(h))
        while True:
            K = PermGroup(self.n, K_gens)
            kmin = list(range(self.n))
            for orb in K.orbits():
                m = min(orb)
                for p in orb:
                    kmin[p] = m
            found = self._run(K, kmin)
            if found is None:
                return K
            K_gens.append(found)

    def _run(self, K, kmin):
        used = [False] * self.n
        omap = [-1] * self.num_orbs
        ouse = [False] * self.num_orbs
        w = identity(self.n)
        return self._dfs(0, w, used, omap, ouse, K, kmin)

    def _dfs(self, i, w, used, omap, ouse, K, kmin):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise ResourceBoundExceeded(
                f"normalizer search exceeds {self.node_limit} nodes",
                bound_name="normalizer_nodes", bound_value=self.node_limit)
        if i == len(self.levels):
            c = w
            for h in self.H.generators:
                if conjugate(h, c) not in self.H:
                    return None
            if c in K:
                return None
            return c
        level = self.levels[i]
        b = level.base
        ob = self.orb_id[b]
        for delta in level.orbit:
            beta = w[delta]
            if used[beta] or self.orb_size[beta] != self.orb_size[b]:
                continue
            obeta = self.orb_id[beta]
            if omap[ob] != -1:
                if omap[ob] != obeta:
                    continue
            elif ouse[obeta]:
                continue
            if i == 0 and kmin[beta] != beta:
                continue
            new_orb = omap[ob] == -1
            used[beta] = True
            if new_orb:
                omap[ob] = obeta
                ouse[obeta] = True
            res = self._dfs(i + 1, compose(level.transversal[delta], w),
                            used, omap, ouse, K, kmin)
            used[beta] = False
            if new_orb:
                omap[ob] = -1
                ouse[obeta] = False
            if res is not None:
                return res
        return None


def normalizer_backtrack(G: PermGroup, H: PermGroup, *,
                         seed_gens: Iterable[Perm] = (),
                         node_limit: int = DEFAULT_NODE_LIMIT) -> PermGroup:
    """N_G(H) by chain DFS; prefer the strategy front-end in subgroups."""
    return _NormalizerSearch(G, H, node_limit).search(seed_gens)


def normalizer_brute(G: PermGroup, H: PermGroup, *,
                     enum_limit: int = DEFAULT_ENUM_LIMIT) -> PermGroup:
    """N_G(H) by filtering every element of G (oracle-grade, small G only)."""
    hgens = [h for h in H.generators if not is_identity(h)]
    gens: list[Perm] = list(hgens)
    K = PermGroup(G.degree, gens)
    for g in G.elements(enum_limit):
        if g in K:
            continue
        if all(conjugate(h, g) in H for h in hgens):
            gens.append(g)
            K = PermGroup(G.degree, gens)
    return K


def normalizer_of_cyclic(G: PermGroup, t: Sequence[int], **kw) -> PermGroup:
    """N_G(<t>) from C_G(t) plus one power-conjugacy witness per residue.

    g normalizes <t> iff t^g == t^k for some k coprime to the order of t;
    the witnesses found, together with C_G(t), generate the normalizer.
    """
    t = tuple(t)
    o = perm_order(t)
    C = centralizer(G, t, **kw)
    if o <= 2:
        return C
    gens = list(C.generators)
    if not is_identity(t) and t in G:
        gens.append(t)
    K = PermGroup(G.degree, gens)
    for k in range(2, o):
        if gcd(k, o) != 1:
            continue
        tk = perm_power(t, k)
        if conjugating_element(K, t, tk) is not None:
            continue
        witness = conjugating_element(G, t, tk)
        if witness is not None:
            gens.append(witness)
            K = PermGroup(G.degree, gens)
    t_powers = {perm_power(t, k) for k in range(o)}
    if not all(conjugate(t, g) in t_powers for g in K.generators):
        raise IncompleteSearch("cyclic normalizer witness outside the subgroup")
    return K
