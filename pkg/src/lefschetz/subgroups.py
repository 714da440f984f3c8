"""Subgroup-level operations: Sylow subgroups, cores, normalizers, fusion.

The normalizer/conjugacy front-ends pick between strategies:

* full enumeration of the ambient group (exact, for small orders),
* the cyclic shortcut N(<t>) = <C(t), power witnesses>,
* orbit-stabilizer on the conjugates of the subgroup, keyed by a digest of
  the sorted element set (exact transversal, Schreier generators, early exit
  once |stabilizer| * |orbit| equals |G|),
* the chain DFS fallback from the backtrack module.

Subgroups handled this way are small (element sets are materialized), which
matches their role here: p-subgroups of groups acting on <= 255 points.
"""

from __future__ import annotations

import hashlib
import math
import random

from .backtrack import (
    centralizer,
    centralizer_of_subgroup,
    conjugating_element,
    normalizer_backtrack,
    normalizer_brute,
    normalizer_of_cyclic,
)
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
    is_identity,
    perm_order,
    perm_power,
)

ENUM_LIMIT = 200_000
SUBGROUP_ORBIT_LIMIT = 800_000
SUBGROUP_SET_LIMIT = 5_000
COSET_LIMIT = 200_000
SYLOW_TRIES = 200
_DIGEST_SIZE = 16


def int_p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_p_group(H: PermGroup, p: int) -> bool:
    o = H.order
    return int_p_part(o, p) == o


def is_elementary_abelian(H: PermGroup, p: int) -> bool:
    if not is_p_group(H, p):
        return False
    gens = H.generators
    for i, a in enumerate(gens):
        if not is_identity(a) and perm_order(a) != p:
            return False
        for b in gens[i + 1:]:
            if compose(a, b) != compose(b, a):
                return False
    return True


def center(G: PermGroup) -> PermGroup:
    return centralizer_of_subgroup(G, G)


def omega1(P: PermGroup, p: int, *, enum_limit: int = SUBGROUP_SET_LIMIT) -> PermGroup:
    """Subgroup generated by the elements of order p (P a small p-group)."""
    gens = [x for x in P.elements(enum_limit) if perm_order(x) == p]
    return PermGroup(P.degree, gens)


def subgroup_intersection(A: PermGroup, B: PermGroup, *,
                          enum_limit: int = SUBGROUP_SET_LIMIT) -> PermGroup:
    """A ∩ B by enumerating the smaller of the two element sets."""
    small, big = (A, B) if A.order <= B.order else (B, A)
    gens = [x for x in small.elements(enum_limit) if x in big]
    return PermGroup(A.degree, gens)


# ---------------------------------------------------------------------------
# orbit-stabilizer on conjugates of a subgroup


def _sorted_element_bytes(H: PermGroup, limit: int) -> list[bytes]:
    return sorted(as_bytes(x) for x in H.elements(limit))


def _set_digest(sorted_bytes: list[bytes]) -> bytes:
    h = hashlib.blake2b(digest_size=_DIGEST_SIZE)
    for b in sorted_bytes:
        h.update(b)
    return h.digest()


def _inverse_bytes(w: bytes, n: int) -> bytes:
    inv = bytearray(n)
    for i, x in enumerate(w):
        inv[x] = i
    return bytes(inv)


def _conjugate_set(base_bytes: list[bytes], w: bytes, n: int,
                   suffix: bytes) -> list[bytes]:
    """{h^w : h in base}, sorted; w given as bytes."""
    winv = _inverse_bytes(w, n)
    wt = w + suffix
    return sorted(winv.translate(h + suffix).translate(wt) for h in base_bytes)


def subgroup_conjugation_orbit(G: PermGroup, H: PermGroup, *,
                               stop_set: list[bytes] | None = None,
                               limit: int = SUBGROUP_ORBIT_LIMIT,
                               set_limit: int = SUBGROUP_SET_LIMIT):
    """BFS over {H^g : g in G} keyed by element-set digest.

    stop_set=None: returns (N_G(H) as PermGroup, orbit size).
    stop_set=sorted element bytes of a target subgroup: returns a transporter
    w with H^w equal to the target, or None when the orbit closes without it.
    """
    n = G.degree
    if n > 255:
        raise ValueError("subgroup orbits require degree <= 255")
    suffix = bytes(range(n, 256))
    base = _sorted_element_bytes(H, set_limit)
    gens = [as_bytes(g) for g in G.generators]
    start_u = as_bytes(identity(n))
    key0 = _set_digest(base)
    target_digest = None
    if stop_set is not None:
        target_digest = _set_digest(stop_set)
        if target_digest == key0 and base == stop_set:
            return identity(n)
    transversal: dict[bytes, bytes] = {key0: start_u}
    order: list[bytes] = [key0]
    qi = 0
    while qi < len(order):
        key = order[qi]
        qi += 1
        u = transversal[key]
        for gb in gens:
            w = compose_bytes(u, gb)
            conj = _conjugate_set(base, w, n, suffix)
            kw = _set_digest(conj)
            if target_digest is not None and kw == target_digest and conj == stop_set:
                return from_bytes(w)
            if kw not in transversal:
                if len(transversal) >= limit:
                    raise ResourceBoundExceeded(
                        f"subgroup conjugation orbit exceeds {limit}",
                        bound_name="subgroup_orbit", bound_value=limit)
                transversal[kw] = w
                order.append(kw)
    if target_digest is not None:
        return None
    orbit_size = len(order)
    if G.order % orbit_size != 0:
        raise IncompleteSearch("subgroup orbit size does not divide group order")
    expected = G.order // orbit_size
    stab_gens = [g for g in H.generators if not is_identity(g)]
    stab = PermGroup(n, stab_gens)
    if stab.order == expected:
        return stab, orbit_size
    for key in order:
        u = transversal[key]
        for gb in gens:
            w = compose_bytes(u, gb)
            conj = _conjugate_set(base, w, n, suffix)
            kw = _set_digest(conj)
            v = transversal[kw]
            schreier = from_bytes(compose_bytes(w, _inverse_bytes(v, n)))
            if not is_identity(schreier) and schreier not in stab:
                stab_gens.append(schreier)
                stab = PermGroup(n, stab_gens)
                if stab.order == expected:
                    return stab, orbit_size
    if stab.order != expected:
        raise IncompleteSearch("subgroup orbit-stabilizer incomplete")
    return stab, orbit_size


def _cyclic_generator(H: PermGroup) -> Perm | None:
    for g in H.generators:
        if perm_order(g) == H.order:
            return g
    return None


def normalizer(G: PermGroup, H: PermGroup, *, strategy: str = "auto",
               enum_limit: int = ENUM_LIMIT,
               orbit_limit: int = SUBGROUP_ORBIT_LIMIT,
               set_limit: int = SUBGROUP_SET_LIMIT) -> PermGroup:
    """N_G(H), choosing a strategy appropriate to the sizes involved."""
    if H.order == 1 or H.order == G.order:
        return G
    if strategy == "brute":
        return normalizer_brute(G, H, enum_limit=enum_limit)
    if strategy == "backtrack":
        return normalizer_backtrack(G, H, seed_gens=_normalizer_seeds(G, H))
    if strategy == "orbit":
        N, _ = subgroup_conjugation_orbit(G, H, limit=orbit_limit,
                                          set_limit=set_limit)
        return N
    if strategy != "auto":
        raise ValueError(f"unknown normalizer strategy {strategy!r}")
    t = _cyclic_generator(H)
    if t is not None:
        return normalizer_of_cyclic(G, t)
    if G.order <= enum_limit:
        return normalizer_brute(G, H, enum_limit=enum_limit)
    # N_G(H) <= N_G(Z(H)): reduce into the normalizer of the characteristic
    # center first, which is often cyclic or has a small orbit
    if H.order <= set_limit:
        Z = center(H)
        if 1 < Z.order < H.order:
            M = normalizer(G, Z, enum_limit=enum_limit,
                           orbit_limit=orbit_limit, set_limit=set_limit)
            if M.order < G.order:
                return normalizer(M, H, enum_limit=enum_limit,
                                  orbit_limit=orbit_limit, set_limit=set_limit)
        try:
            N, _ = subgroup_conjugation_orbit(G, H, limit=orbit_limit,
                                              set_limit=set_limit)
            return N
        except ResourceBoundExceeded:
            pass
    return normalizer_backtrack(G, H, seed_gens=_normalizer_seeds(G, H))


def _normalizer_seeds(G: PermGroup, H: PermGroup) -> list[Perm]:
    try:
        C = centralizer_of_subgroup(G, H)
        return list(C.generators)
    except ResourceBoundExceeded:
        return []


def subgroup_conjugating_element(G: PermGroup, A: PermGroup, B: PermGroup, *,
                                 orbit_limit: int = SUBGROUP_ORBIT_LIMIT,
                                 set_limit: int = SUBGROUP_SET_LIMIT) -> Perm | None:
    """Some g in G with A^g == B (as sets), or None."""
    if A.order != B.order:
        return None
    a_set = _sorted_element_bytes(A, set_limit)
    b_set = _sorted_element_bytes(B, set_limit)
    profile = lambda s: sorted((perm_order(from_bytes(x)), cycle_type(from_bytes(x)))
                               for x in s)
    if profile(a_set) != profile(b_set):
        return None
    try:
        return subgroup_conjugation_orbit(G, A, stop_set=b_set,
                                          limit=orbit_limit, set_limit=set_limit)
    except ResourceBoundExceeded:
        pass
    # pivot strategy: conjugate a rarest-profile element of A onto each
    # matching element of B, then close with the centralizer of the target
    inv_count: dict[tuple, int] = {}
    a_elems = [from_bytes(x) for x in a_set if not is_identity(from_bytes(x))]
    b_elems = [from_bytes(x) for x in b_set if not is_identity(from_bytes(x))]
    for x in a_elems:
        k = (perm_order(x), cycle_type(x))
        inv_count[k] = inv_count.get(k, 0) + 1
    pivot = min(a_elems, key=lambda x: inv_count[(perm_order(x), cycle_type(x))])
    pk = (perm_order(pivot), cycle_type(pivot))
    for b in b_elems:
        if (perm_order(b), cycle_type(b)) != pk:
            continue
        g0 = conjugating_element(G, pivot, b)
        if g0 is None:
            continue
        C = centralizer(G, b)
        A1 = A.conjugated(g0)
        h = subgroup_conjugation_orbit(C, A1, stop_set=b_set,
                                       limit=orbit_limit, set_limit=set_limit)
        if h is not None:
            return compose(g0, h)
    return None


def are_subgroups_conjugate(G: PermGroup, A: PermGroup, B: PermGroup, **kw) -> bool:
    return subgroup_conjugating_element(G, A, B, **kw) is not None


# ---------------------------------------------------------------------------
# Sylow subgroups and cores


def _p_element(G: PermGroup, p: int, rng: random.Random, tries: int) -> Perm:
    from .classes import p_part
    for _ in range(tries):
        x = p_part(G.random_element(rng), p)
        if not is_identity(x):
            return x
    raise IncompleteSearch(f"no nontrivial {p}-element found in {tries} samples")


def sylow_subgroup(G: PermGroup, p: int, *, seed: int = 271828,
                   enum_limit: int = ENUM_LIMIT,
                   tries: int = SYLOW_TRIES) -> PermGroup:
    """A Sylow p-subgroup of G.

    Strategy: random p-elements until one is p-central (its centralizer
    carries the full p-part of |G|), then recurse into that centralizer;
    groups at or below the enumeration bound climb normalizers directly.
    The random seed affects which Sylow subgroup is returned, never its
    order; the result is certified to have the full p-power order.
    """
    cache = getattr(G, "_sylow_cache", None)
    if cache is None:
        cache = {}
        G._sylow_cache = cache
    if p in cache:
        return cache[p]
    target = int_p_part(G.order, p)
    if target == 1:
        P = PermGroup(G.degree, [], name="trivial")
        cache[p] = P
        return P
    rng = random.Random(seed)
    P = None
    if G.order > enum_limit:
        for _ in range(tries):
            z = _p_element(G, p, rng, tries)
            C = centralizer(G, z)
            if int_p_part(C.order, p) == target and C.order < G.order:
                P = sylow_subgroup(C, p, seed=seed, enum_limit=enum_limit,
                                   tries=tries)
                break
    if P is None:
        P = _sylow_climb(G, p, target, rng, tries)
    if P.order != target:
        raise IncompleteSearch(
            f"Sylow search returned order {P.order}, wanted {target}")
    cache[p] = P
    return P


def _sylow_climb(G: PermGroup, p: int, target: int, rng: random.Random,
                 tries: int) -> PermGroup:
    from .classes import p_part
    z = _p_element(G, p, rng, tries)
    P = G.subgroup([z])
    while P.order < target:
        N = normalizer(G, P)
        grown = False
        if N.order <= SUBGROUP_SET_LIMIT * 4:
            for x in N.elements():
                y = p_part(x, p)
                if not is_identity(y) and y not in P:
                    P = G.subgroup(list(P.generators) + [y])
                    grown = True
                    break
        if not grown:
            for _ in range(tries):
                y = p_part(N.random_element(rng), p)
                if not is_identity(y) and y not in P:
                    P = G.subgroup(list(P.generators) + [y])
                    grown = True
                    break
        if not grown:
            raise IncompleteSearch(
                f"Sylow climb stalled at order {P.order} of {target}")
    return P


def p_core(G: PermGroup, p: int, *, set_limit: int = SUBGROUP_SET_LIMIT) -> PermGroup:
    """O_p(G): the largest normal p-subgroup, as iterated intersections
    of a Sylow p-subgroup with its generator conjugates."""
    O = sylow_subgroup(G, p)
    while True:
        elems = frozenset(O.elements(set_limit))
        changed = False
        for g in G.generators:
            conj = {conjugate(x, g) for x in elems}
            if conj != elems:
                inter = elems & conj
                O = PermGroup(G.degree, sorted(inter))
                changed = True
                break
        if not changed:
            return O


# ---------------------------------------------------------------------------
# cosets and double cosets


def right_coset_reps(G: PermGroup, H: PermGroup, *,
                     limit: int = COSET_LIMIT) -> dict[bytes, Perm]:
    """Canonical key -> representative for the right cosets Hg.

    The key is the lexicographically least element of the coset.
    """
    index = G.order // H.order
    if index > limit:
        raise ResourceBoundExceeded(
            f"coset enumeration of index {index} exceeds {limit}",
            bound_name="coset_enumeration", bound_value=limit)
    r0 = H.minimal_coset_rep(identity(G.degree))
    reps = {as_bytes(r0): r0}
    frontier = [r0]
    while frontier:
        nxt = []
        for r in frontier:
            for g in G.generators:
                m = H.minimal_coset_rep(compose(r, g))
                key = as_bytes(m)
                if key not in reps:
                    reps[key] = m
                    nxt.append(m)
        frontier = nxt
    if len(reps) != index:
        raise IncompleteSearch("coset enumeration incomplete")
    return reps


def double_cosets(G: PermGroup, H: PermGroup, K: PermGroup, *,
                  limit: int = COSET_LIMIT) -> list[tuple[Perm, int]]:
    """The double cosets HgK as (representative, size) pairs.

    Sizes are exact and certified to sum to |G|.
    """
    reps = right_coset_reps(G, H, limit=limit)
    unseen = set(reps.keys())
    out = []
    while unseen:
        start = min(unseen)
        orbit = {start}
        frontier = [reps[start]]
        unseen.discard(start)
        while frontier:
            nxt = []
            for r in frontier:
                for k in K.generators:
                    m = H.minimal_coset_rep(compose(r, k))
                    key = as_bytes(m)
                    if key in unseen:
                        unseen.discard(key)
                        orbit.add(key)
                        nxt.append(m)
            frontier = nxt
        out.append((reps[start], H.order * len(orbit)))
    if sum(size for _, size in out) != G.order:
        raise IncompleteSearch("double coset sizes do not sum to |G|")
    return out


def double_coset_elements(H: PermGroup, g: Perm, K: PermGroup, *,
                          set_limit: int = SUBGROUP_SET_LIMIT * 8) -> set[Perm]:
    """All elements of HgK (both factors enumerated; small subgroups only)."""
    out = set()
    for h in H.elements(set_limit):
        hg = compose(h, g)
        for k in K.elements(set_limit):
            out.add(compose(hg, k))
    return out


# ---------------------------------------------------------------------------
# enumeration of p-subgroups up to conjugacy

DEFAULT_SYLOW_ENUM_BOUND = 243


def _set_key(members: frozenset[bytes]) -> tuple[bytes, ...]:
    return tuple(sorted(members))


def subgroups_of_p_group(S: PermGroup, p: int, *,
                         bound: int = DEFAULT_SYLOW_ENUM_BOUND,
                         ) -> dict[frozenset[bytes], list[Perm]]:
    """Every nontrivial subgroup of the p-group S, as a mapping from the
    element set (bytes of each member) to a generating list.

    Subgroups are grown one index-p step at a time: each subgroup K of order
    p^(k+1) contains a maximal (hence normal) subgroup H, and any element x
    of K outside H satisfies x in N_S(H) with x^p in H; so extending every
    known H by every such x finds every K exactly.
    """
    if not is_p_group(S, p):
        raise ValueError("subgroup enumeration requires a p-group")
    if S.order > bound:
        raise ResourceBoundExceeded(
            f"Sylow subgroup order {S.order} exceeds enumeration bound {bound}",
            bound_name="sylow_enum_bound", bound_value=bound)
    n = S.degree
    suffix = bytes(range(n, 256)) if n < 256 else b""
    elems = sorted(as_bytes(g) for g in S.elements(bound))
    ident_b = as_bytes(identity(n))

    all_subs: dict[frozenset[bytes], list[Perm]] = {}
    level: dict[frozenset[bytes], list[Perm]] = {}
    for xb in elems:
        x = from_bytes(xb)
        if perm_order(x) != p:
            continue
        members = {ident_b}
        acc = xb
        for _ in range(p - 1):
            members.add(acc)
            acc = compose_bytes(acc, xb)
        key = frozenset(members)
        if key not in level:
            level[key] = [x]
    all_subs.update(level)

    while level:
        nxt: dict[frozenset[bytes], list[Perm]] = {}
        for key, gens in level.items():
            if len(key) == S.order:
                continue
            base = sorted(key)
            for xb in elems:
                if xb in key:
                    continue
                x = from_bytes(xb)
                if as_bytes(perm_power(x, p)) not in key:
                    continue
                conj = _conjugate_set(base, xb, n, suffix)
                if set(conj) != key:
                    continue
                members = set(key)
                coset = list(base)
                for _ in range(p - 1):
                    coset = [compose_bytes(h, xb) for h in coset]
                    members.update(coset)
                new_key = frozenset(members)
                if new_key not in all_subs:
                    new_gens = gens + [x]
                    all_subs[new_key] = new_gens
                    nxt[new_key] = new_gens
        level = nxt
    return all_subs


def _subgroup_fingerprint(H: PermGroup) -> tuple:
    hist: dict[int, int] = {}
    expo = 1
    for g in H.elements(SUBGROUP_SET_LIMIT):
        o = perm_order(g)
        hist[o] = hist.get(o, 0) + 1
        expo = expo * o // math.gcd(expo, o)
    return (H.order, expo, center(H).order, H.derived_subgroup().order,
            tuple(sorted(hist.items())))


def p_subgroup_classes(G: PermGroup, p: int, *,
                       sylow_bound: int = DEFAULT_SYLOW_ENUM_BOUND,
                       ) -> list[PermGroup]:
    """One representative per G-conjugacy class of nontrivial p-subgroups.

    Enumeration happens inside a single Sylow p-subgroup; duplicates are
    removed first along N_G(S)-orbits, then by invariant fingerprints plus
    explicit conjugacy searches.  The result is deterministically ordered by
    (order, fingerprint, element set).
    """
    if G.order % p:
        return []
    cache = getattr(G, "_psub_cache", None)
    if cache is None:
        cache = G._psub_cache = {}
    if p in cache:
        return cache[p]
    S = sylow_subgroup(G, p)
    if S.order > sylow_bound:
        raise ResourceBoundExceeded(
            f"Sylow subgroup order {S.order} exceeds enumeration bound "
            f"{sylow_bound}", bound_name="sylow_bound",
            bound_value=sylow_bound)
    subs = subgroups_of_p_group(S, p, bound=sylow_bound)
    n = G.degree
    suffix = bytes(range(n, 256)) if n < 256 else b""
    N = normalizer(G, S)
    ngens = [as_bytes(g) for g in N.generators]

    # N_G(S)-orbits; the minimum unseen set is the minimum of its own orbit
    keys = {key: _set_key(key) for key in subs}
    unseen = set(subs)
    n_classes: list[frozenset[bytes]] = []
    while unseen:
        start = min(unseen, key=keys.__getitem__)
        orbit = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            base = sorted(cur)
            for gb in ngens:
                img = frozenset(_conjugate_set(base, gb, n, suffix))
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        unseen -= orbit
        n_classes.append(start)
    n_classes.sort(key=keys.__getitem__)

    # fingerprint buckets, then explicit G-conjugacy fusion
    reps: list[tuple[tuple, tuple, PermGroup]] = []
    buckets: dict[tuple, list[PermGroup]] = {}
    for key in n_classes:
        H = G.subgroup(subs[key])
        fp = _subgroup_fingerprint(H)
        new = True
        for other in buckets.get(fp, []):
            if are_subgroups_conjugate(G, H, other):
                new = False
                break
        if new:
            buckets.setdefault(fp, []).append(H)
            reps.append((fp, keys[key], H))
    reps.sort(key=lambda t: (t[0], t[1]))
    out = [H for _, _, H in reps]
    cache[p] = out
    return out
