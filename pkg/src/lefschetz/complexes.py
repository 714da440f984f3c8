"""Order complexes of subgroup collections and their homotopy invariants.

The complex attached to a collection of p-subgroup classes is the order
complex of the inclusion poset of all conjugates of the member subgroups:
vertices are the subgroups themselves and d-simplices are the strict
inclusion chains Q_0 < Q_1 < ... < Q_d.  Two modes are offered:

* ``full`` expands every vertex and every chain explicitly.  This supports
  fixed-point subcomplexes, connected components, exact homology ranks,
  verified poset reductions and contractibility certificates.
* ``orbit-level`` never expands the poset.  It stores one representative
  chain per orbit of simplices together with its stabilizer, which is
  enough for alternating sums of induced characters and Euler
  characteristics, and fixed-point subcomplexes of a single element can
  still be materialised on demand along that element's action.

All arithmetic is exact: homology over the rationals uses integer row
elimination (scale-free), homology over a prime field uses standard
elimination.  No integral Smith form is computed; torsion is out of scope.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .backtrack import centralizer, conjugating_element
from .collection import Collection
from .errors import IncompleteSearch, ResourceBoundExceeded, ValidationError
from .group import PermGroup, generic_orbit
from .perm import (Perm, as_bytes, compose_bytes, cycle_type, from_bytes,
                   identity, is_identity)
from .subgroups import (_conjugate_set, _subgroup_fingerprint, normalizer,
                        subgroup_conjugating_element, subgroup_conjugation_orbit,
                        subgroups_of_p_group)

DEFAULT_VERTEX_BOUND = 60_000
DEFAULT_CELL_BOUND = 2_000_000
DEFAULT_MATRIX_BOUND = 4_000_000
DEFAULT_COLLAPSE_BOUND = 60_000
ONDEMAND_ENUM_LIMIT = 500_000
FIXED_ORBIT_LIMIT = 200_000

MODES = ("full", "orbit-level")
CERTIFICATE_LEVELS = ("CONE", "COLLAPSIBLE", "FP-ACYCLIC", "NONE")

VertexKey = tuple  # sorted tuple of the vertex set's elements


# ---------------------------------------------------------------------------
# complex container


def _inclusion_lists(keys: Sequence[VertexKey],
                     fsets: Sequence[frozenset]) -> list[list[int]]:
    """above[i] = ascending indices j with vertex i strictly below vertex j.

    Smaller vertices are bucketed by one of their own elements, so each
    candidate superset only inspects the buckets of its members instead of
    every smaller vertex.
    """
    n = len(keys)
    above: list[list[int]] = [[] for _ in range(n)]
    bucket: dict[object, list[int]] = {}
    for j in range(n):
        kj = keys[j]
        fj = fsets[j]
        lj = len(kj)
        cand: set[int] = set()
        for e in kj:
            got = bucket.get(e)
            if got:
                cand.update(got)
        for i in sorted(cand):
            if len(keys[i]) < lj and fsets[i] < fj:
                above[i].append(j)
        # all subgroup vertices share the identity element, so bucket by the
        # second-smallest element when there is one
        bucket.setdefault(kj[1] if lj > 1 else kj[0], []).append(j)
    return above


def _chains_from_poset(above: list[list[int]],
                       cell_bound: int) -> dict[int, list[tuple[int, ...]]]:
    """All chains of the poset, keyed by dimension, in lexicographic order."""
    n = len(above)
    simplices: dict[int, list[tuple[int, ...]]] = {0: [(i,) for i in range(n)]}
    total = n
    d = 0
    while simplices[d]:
        nxt: list[tuple[int, ...]] = []
        for s in simplices[d]:
            top = s[-1]
            for j in above[top]:
                nxt.append(s + (j,))
        total += len(nxt)
        if total > cell_bound:
            raise ResourceBoundExceeded(
                f"chain expansion exceeds {cell_bound} simplices",
                bound_name="cell_bound", bound_value=cell_bound)
        if not nxt:
            break
        d += 1
        simplices[d] = nxt
    if not simplices[d]:
        del simplices[d]
    return simplices


@dataclass(frozen=True)
class SimplexOrbit:
    """One orbit of simplices: a representative chain with its stabilizer."""
    dim: int
    chain: tuple[VertexKey, ...]          # bottom to top
    member_chain: tuple[int, ...]         # collection member index per entry
    stabilizer: PermGroup                 # joint normalizer of the chain
    size: int                             # orbit length


class OrderComplex:
    """Order complex of a poset of sets (usually subgroups of one group)."""

    def __init__(self, keys: Iterable[VertexKey] = (), *,
                 group: PermGroup | None = None, prime: int | None = None,
                 kind: str | None = None, collection: Collection | None = None,
                 mode: str = "full",
                 vertex_member: Sequence[int | None] | None = None,
                 cell_bound: int = DEFAULT_CELL_BOUND):
        if mode not in MODES:
            raise ValidationError(f"unknown complex mode {mode!r}")
        self.group = group
        self.prime = prime
        self.kind = kind
        self.collection = collection
        self.mode = mode
        raw = list(keys)
        members = list(vertex_member) if vertex_member is not None else [None] * len(raw)
        if len(members) != len(raw):
            raise ValidationError("vertex_member length mismatch")
        order = sorted(range(len(raw)), key=lambda i: (len(raw[i]), raw[i]))
        self.vertex_keys: tuple[VertexKey, ...] = tuple(raw[i] for i in order)
        self.vertex_member: tuple[int | None, ...] = tuple(members[i] for i in order)
        self.vertex_sets: tuple[frozenset, ...] = tuple(frozenset(k) for k in self.vertex_keys)
        self.vertex_index: dict[VertexKey, int] = {k: i for i, k in enumerate(self.vertex_keys)}
        if len(self.vertex_index) != len(self.vertex_keys):
            raise ValidationError("duplicate vertices in complex")
        if mode == "full":
            above = _inclusion_lists(self.vertex_keys, self.vertex_sets)
            self.simplices = _chains_from_poset(above, cell_bound)
            if not self.vertex_keys:
                self.simplices = {}
        else:
            self.simplices = {}
        self._orbits: list[list[SimplexOrbit]] | None = None
        self._normalizers: dict[int, PermGroup] = {}
        self._below_members: dict[VertexKey, list[tuple[int, VertexKey]]] = {}

    # -- elementary queries -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_keys)

    @property
    def dim(self) -> int:
        """Dimension (-1 for the empty complex)."""
        self._require_full()
        return max(self.simplices, default=-1)

    @property
    def face_counts(self) -> tuple[int, ...]:
        self._require_full()
        return tuple(len(self.simplices[d]) for d in range(self.dim + 1))

    @property
    def euler(self) -> int:
        self._require_full()
        return sum((-1) ** d * len(s) for d, s in self.simplices.items())

    @property
    def reduced_euler(self) -> int:
        return self.euler - 1

    def _require_full(self) -> None:
        if self.mode != "full":
            raise ValidationError(
                "operation requires a fully expanded complex "
                "(this one is orbit-level)")

    def _require_group(self) -> None:
        if self.group is None:
            raise ValidationError("operation requires an ambient group")

    def vertex_orders(self) -> tuple[int, ...]:
        return tuple(len(k) for k in self.vertex_keys)

    def __repr__(self) -> str:
        if self.mode == "full":
            return (f"OrderComplex({self.kind or 'poset'}, "
                    f"{self.n_vertices} vertices, dim {self.dim})")
        return f"OrderComplex({self.kind or 'poset'}, orbit-level)"

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        out: dict = {
            "mode": self.mode,
            "kind": self.kind,
            "prime": self.prime,
        }
        if self.mode == "full":
            out["vertices"] = [
                {"index": i, "order": len(k), "member": self.vertex_member[i]}
                for i, k in enumerate(self.vertex_keys)]
            out["simplices"] = {str(d): [list(s) for s in ss]
                                for d, ss in self.simplices.items()}
            out["face_counts"] = list(self.face_counts)
            out["euler"] = self.euler
            out["reduced_euler"] = self.reduced_euler
        if self.collection is not None and (self.mode != "full" or self._orbits is not None):
            orbits = self.orbit_simplices()
            out["orbits"] = [[{"dim": o.dim,
                               "members": list(o.member_chain),
                               "stabilizer_order": o.stabilizer.order,
                               "orbit_size": o.size}
                              for o in dim_orbits] for dim_orbits in orbits]
        return out

    # -- orbit-level data ---------------------------------------------------

    def member_normalizer(self, mi: int) -> PermGroup:
        """Normalizer of the representative subgroup of collection member mi."""
        if self.collection is None:
            raise ValidationError("complex has no backing collection")
        if mi not in self._normalizers:
            self._require_group()
            mem = self.collection.members[mi]
            N = normalizer(self.group, mem.subgroup)
            if self.group.order % N.order or self.group.order // N.order != mem.orbit_size:
                raise IncompleteSearch("normalizer inconsistent with orbit size")
            self._normalizers[mi] = N
        return self._normalizers[mi]

    def _member_key(self, mi: int) -> VertexKey:
        mem = self.collection.members[mi]
        return tuple(sorted(as_bytes(x) for x in mem.subgroup.elements()))

    def _members_below(self, key: VertexKey) -> list[tuple[int, VertexKey]]:
        """Proper nontrivial subgroups of the group with element set ``key``
        that are conjugate to a collection member, with the member index."""
        if key in self._below_members:
            return self._below_members[key]
        self._require_group()
        G = self.group
        n = G.degree
        p = self.prime
        B = PermGroup(n, [from_bytes(b) for b in key])
        subs = subgroups_of_p_group(B, p, bound=max(len(key), 1))
        reps = self.collection.members
        fps = [_subgroup_fingerprint(m.subgroup) for m in reps]
        out: list[tuple[int, VertexKey]] = []
        for fkey in subs:
            if len(fkey) >= len(key):
                continue
            V = PermGroup(n, [from_bytes(b) for b in fkey])
            fp = _subgroup_fingerprint(V)
            for mi, mem in enumerate(reps):
                if mem.order != V.order or fps[mi] != fp:
                    continue
                w = subgroup_conjugating_element(G, V, mem.subgroup)
                if w is not None:
                    out.append((mi, tuple(sorted(fkey))))
                    break
        out.sort()
        self._below_members[key] = out
        return out

    def orbit_simplices(self) -> list[list[SimplexOrbit]]:
        """Representative chains per simplex orbit, by dimension.

        Chains are grown downwards: a (d+1)-chain arises from its top d
        entries by inserting a new bottom below the old one, and the orbits
        of such extensions correspond to stabilizer orbits on the candidate
        bottoms.
        """
        if self._orbits is not None:
            return self._orbits
        if self.collection is None:
            raise ValidationError("orbit data requires a backing collection")
        self._require_group()
        G = self.group
        n = G.degree
        suffix = bytes(range(n, 256))
        level: list[SimplexOrbit] = []
        for mi, mem in enumerate(self.collection.members):
            N = self.member_normalizer(mi)
            level.append(SimplexOrbit(0, (self._member_key(mi),), (mi,),
                                      N, G.order // N.order))
        level.sort(key=lambda o: (o.member_chain, o.chain))
        out = [level]
        while level:
            nxt: list[SimplexOrbit] = []
            for orb in level:
                bottom = orb.chain[0]
                S = orb.stabilizer
                sgens = [as_bytes(h) for h in S.generators if not is_identity(h)]
                acts = [(lambda k, wb=wb: tuple(_conjugate_set(list(k), wb, n, suffix)))
                        for wb in sgens]
                seen: set[VertexKey] = set()
                for mi, vkey in self._members_below(bottom):
                    if vkey in seen:
                        continue
                    orbit_keys = generic_orbit(vkey, acts)
                    seen.update(orbit_keys)
                    V = PermGroup(n, [from_bytes(b) for b in vkey])
                    T, osize = subgroup_conjugation_orbit(S, V)
                    if osize != len(orbit_keys):
                        raise IncompleteSearch("chain stabilizer orbit mismatch")
                    nxt.append(SimplexOrbit(
                        orb.dim + 1, (vkey,) + orb.chain, (mi,) + orb.member_chain,
                        T, G.order // T.order))
            nxt.sort(key=lambda o: (o.member_chain, o.chain))
            if not nxt:
                break
            out.append(nxt)
            level = nxt
        self._orbits = out
        return out

    def euler_from_orbits(self) -> int:
        return sum((-1) ** d * sum(o.size for o in dim_orbits)
                   for d, dim_orbits in enumerate(self.orbit_simplices()))


class FixedComplex(OrderComplex):
    """The subcomplex of simplices whose members are all normalized by the
    given elements."""

    def __init__(self, keys, *, parent: OrderComplex, elements: tuple[Perm, ...],
                 **kw):
        super().__init__(keys, **kw)
        self.parent = parent
        self.elements = elements


# ---------------------------------------------------------------------------
# construction


def _expand_member(G: PermGroup, key: VertexKey, expected: int,
                   bound: int) -> list[VertexKey]:
    n = G.degree
    suffix = bytes(range(n, 256))
    gens = [as_bytes(g) for g in G.generators if not is_identity(g)]
    acts = [(lambda k, wb=wb: tuple(_conjugate_set(list(k), wb, n, suffix)))
            for wb in gens]
    orb = generic_orbit(key, acts, limit=bound + 1)
    if len(orb) != expected:
        raise IncompleteSearch(
            f"subgroup orbit has {len(orb)} conjugates, expected {expected}")
    return list(orb)


def order_complex(collection: Collection, mode: str = "full", *,
                  vertex_bound: int = DEFAULT_VERTEX_BOUND,
                  cell_bound: int = DEFAULT_CELL_BOUND) -> OrderComplex:
    """The order complex of all conjugates of the collection's members."""
    if mode == "orbit":
        mode = "orbit-level"
    if mode not in MODES:
        raise ValidationError(f"unknown complex mode {mode!r}")
    G = collection.group
    base = dict(group=G, prime=collection.prime, kind=collection.kind,
                collection=collection)
    if mode == "orbit-level":
        return OrderComplex((), mode="orbit-level", **base)
    total = collection.total_subgroups
    if total > vertex_bound:
        raise ResourceBoundExceeded(
            f"full expansion needs {total} vertices, above the bound "
            f"{vertex_bound}; use orbit-level mode",
            bound_name="vertex_bound", bound_value=vertex_bound)
    keys: list[VertexKey] = []
    member_of: list[int] = []
    for mi, mem in enumerate(collection.members):
        key = tuple(sorted(as_bytes(x) for x in mem.subgroup.elements()))
        orb = _expand_member(G, key, mem.orbit_size, vertex_bound)
        keys.extend(orb)
        member_of.extend([mi] * len(orb))
    return OrderComplex(keys, mode="full", vertex_member=member_of,
                        cell_bound=cell_bound, **base)


def induced_subcomplex(cx: OrderComplex, vertex_indices: Iterable[int],
                       **extra) -> OrderComplex:
    idx = sorted(set(vertex_indices))
    return OrderComplex([cx.vertex_keys[i] for i in idx],
                        group=cx.group, prime=cx.prime, kind=cx.kind,
                        vertex_member=[cx.vertex_member[i] for i in idx],
                        **extra)


# ---------------------------------------------------------------------------
# fixed-point subcomplexes


def _key_normalized_by(key: VertexKey, wb: bytes, n: int, suffix: bytes) -> bool:
    return tuple(_conjugate_set(list(key), wb, n, suffix)) == key


def _fixed_vertices_on_demand(cx: OrderComplex, g: Perm, *,
                              enum_limit: int = ONDEMAND_ENUM_LIMIT
                              ) -> tuple[list[VertexKey], list[int]]:
    """Vertices of the fixed-point subcomplex of g, one centralizer orbit at
    a time, without expanding the ambient complex.

    For a member representative R with normalizer N, the conjugates of R
    normalized by g correspond to the N-classes of elements u of N that are
    conjugate to g: if u^c = g then R^c is such a vertex, and the full set
    of them is its orbit under the centralizer of g.
    """
    G = cx.group
    n = G.degree
    suffix = bytes(range(n, 256))
    gb = as_bytes(g)
    Cg = centralizer(G, g)
    cgens = [as_bytes(h) for h in Cg.generators if not is_identity(h)]
    acts = [(lambda k, wb=wb: tuple(_conjugate_set(list(k), wb, n, suffix)))
            for wb in cgens]
    gct = cycle_type(g)
    keys: list[VertexKey] = []
    member_of: list[int] = []
    seen: set[VertexKey] = set()
    for mi in range(len(cx.collection.members)):
        N = cx.member_normalizer(mi)
        if N.order > enum_limit:
            raise ResourceBoundExceeded(
                f"normalizer of order {N.order} exceeds the on-demand "
                f"enumeration limit {enum_limit}",
                bound_name="ondemand_enum", bound_value=enum_limit)
        ngens = [as_bytes(h) for h in N.generators if not is_identity(h)]
        nacts = [(lambda xb, wb=wb: _conjugate_bytes(xb, wb, n, suffix))
                 for wb in ngens]
        claimed: set[bytes] = set()
        reps: list[Perm] = []
        for x in N.elements(enum_limit):
            if cycle_type(x) != gct:
                continue
            xb = as_bytes(x)
            if xb in claimed:
                continue
            claimed.update(generic_orbit(xb, nacts))
            reps.append(x)
        base = list(cx._member_key(mi))
        for u in reps:
            c = conjugating_element(G, u, g)
            if c is None:
                continue
            v0 = tuple(_conjugate_set(base, as_bytes(c), n, suffix))
            if not _key_normalized_by(v0, gb, n, suffix):
                raise IncompleteSearch("on-demand fixed vertex is not fixed")
            for key in generic_orbit(v0, acts, limit=FIXED_ORBIT_LIMIT):
                if key in seen:
                    raise IncompleteSearch("fixed-vertex orbits overlap")
                seen.add(key)
                keys.append(key)
                member_of.append(mi)
    return keys, member_of


def _conjugate_bytes(xb: bytes, wb: bytes, n: int, suffix: bytes) -> bytes:
    winv = bytes(sorted(range(n), key=wb.__getitem__))
    return winv.translate(xb + suffix).translate(wb + suffix)


def invariant_subcomplex(cx: OrderComplex, elements: Sequence[Perm], *,
                         cell_bound: int = DEFAULT_CELL_BOUND) -> FixedComplex:
    """Subcomplex of simplices all of whose members are normalized by every
    given element (member-by-member normalization)."""
    cx._require_group()
    G = cx.group
    n = G.degree
    elements = tuple(tuple(x) for x in elements)
    for x in elements:
        if x not in G:
            raise ValidationError("element lies outside the ambient group")
    nontrivial = [x for x in elements if not is_identity(x)]
    suffix = bytes(range(n, 256))
    base = dict(parent=cx, elements=elements, group=G, prime=cx.prime,
                kind=cx.kind, cell_bound=cell_bound)
    if cx.mode == "full":
        keys = list(cx.vertex_keys)
        member_of = list(cx.vertex_member)
    else:
        if not nontrivial:
            full = order_complex(cx.collection)
            keys = list(full.vertex_keys)
            member_of = list(full.vertex_member)
        else:
            keys, member_of = _fixed_vertices_on_demand(cx, nontrivial[0])
    for x in nontrivial:
        xb = as_bytes(x)
        kept = [i for i, k in enumerate(keys)
                if _key_normalized_by(k, xb, n, suffix)]
        keys = [keys[i] for i in kept]
        member_of = [member_of[i] for i in kept]
    return FixedComplex(keys, vertex_member=member_of, **base)


def fixed_subcomplex(cx: OrderComplex, g: Sequence[int], *,
                     cell_bound: int = DEFAULT_CELL_BOUND) -> FixedComplex:
    """The subcomplex of simplices fixed by g; g must lie in the group."""
    return invariant_subcomplex(cx, [tuple(g)], cell_bound=cell_bound)


# ---------------------------------------------------------------------------
# components and Euler characteristics


@dataclass(frozen=True)
class ComponentSummary:
    count: int
    sizes: tuple[tuple[int, ...], ...]   # per component: counts per dimension
    euler: int
    reduced_euler: int


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _component_roots(cx: OrderComplex) -> list[int]:
    dsu = _DSU(cx.n_vertices)
    for s in cx.simplices.get(1, ()):
        dsu.union(s[0], s[1])
    return [dsu.find(i) for i in range(cx.n_vertices)]


def components_and_euler(cx: OrderComplex) -> ComponentSummary:
    cx._require_full()
    if cx.n_vertices == 0:
        return ComponentSummary(0, (), 0, -1)
    roots = _component_roots(cx)
    root_list = sorted(set(roots))
    comp_of = {r: c for c, r in enumerate(root_list)}
    dim = cx.dim
    counts = [[0] * (dim + 1) for _ in root_list]
    for d, ss in cx.simplices.items():
        for s in ss:
            counts[comp_of[roots[s[0]]]][d] += 1
    sizes = tuple(tuple(c) for c in counts)
    euler = cx.euler
    return ComponentSummary(len(root_list), sizes, euler, euler - 1)


def component_subcomplexes(cx: OrderComplex) -> list[OrderComplex]:
    """Induced subcomplex of each connected component, by least vertex."""
    cx._require_full()
    roots = _component_roots(cx)
    groups: dict[int, list[int]] = {}
    for i, r in enumerate(roots):
        groups.setdefault(r, []).append(i)
    return [induced_subcomplex(cx, groups[r]) for r in sorted(groups)]


# ---------------------------------------------------------------------------
# homology


def _rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in row.items()}
                break
            f = row[c]
            row = {k: v for k, v in
                   ((k, (row.get(k, 0) - f * piv.get(k, 0)) % p)
                    for k in set(row) | set(piv)) if v}
        # fully reduced to zero: contributes nothing
    return len(pivots)


def _rank_rational(rows: list[dict[int, int]]) -> int:
    from math import gcd
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[c] = {k: v // g for k, v in row.items()}
                break
            a, b = piv[c], row[c]
            new = {}
            for k in set(row) | set(piv):
                v = row.get(k, 0) * a - piv.get(k, 0) * b
                if v:
                    new[k] = v
            row = new
    return len(pivots)


def _boundary_rows(cx: OrderComplex, d: int) -> list[dict[int, int]]:
    cols = {s: i for i, s in enumerate(cx.simplices[d - 1])}
    rows = []
    for s in cx.simplices[d]:
        row = {}
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            row[cols[face]] = -1 if i % 2 else 1
        rows.append(row)
    return rows


def homology_ranks(cx: OrderComplex, field: int | str = "rational", *,
                   matrix_bound: int = DEFAULT_MATRIX_BOUND) -> tuple[int, ...]:
    """Reduced Betti numbers over the rationals or over a prime field.

    Returns one entry per dimension 0..dim; the empty complex returns ().
    """
    cx._require_full()
    if field in ("rational", "Q", 0, None):
        p = None
    else:
        p = int(field)
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValidationError(f"{p} is not a prime field order")
    if cx.n_vertices == 0:
        return ()
    dim = cx.dim
    ncomp = len(set(_component_roots(cx)))
    counts = cx.face_counts
    # rank of each boundary map; the vertex-edge one is free from components
    ranks = [0] * (dim + 2)
    if dim >= 1:
        ranks[1] = cx.n_vertices - ncomp
    for d in range(2, dim + 1):
        if counts[d] * counts[d - 1] > matrix_bound:
            raise ResourceBoundExceeded(
                f"boundary matrix {counts[d]}x{counts[d - 1]} exceeds "
                f"the elimination bound", bound_name="matrix_bound",
                bound_value=matrix_bound)
        rows = _boundary_rows(cx, d)
        ranks[d] = _rank_mod_p(rows, p) if p is not None else _rank_rational(rows)
    betti = [ncomp - 1]
    for d in range(1, dim + 1):
        betti.append(counts[d] - ranks[d] - ranks[d + 1])
    if any(b < 0 for b in betti):
        raise IncompleteSearch("negative Betti rank: elimination bug")
    return tuple(betti)


# ---------------------------------------------------------------------------
# poset reductions


@dataclass(frozen=True)
class ReductionRule:
    """An order-preserving self-map of the vertex poset, pointwise comparable
    to the identity.

    Kinds: ``intersect-centralizer`` sends Q to the subgroup of elements of Q
    commuting with the rule's element; ``multiply-central`` sends Q to the
    subgroup generated by Q and the element; ``custom`` applies a caller map
    on vertex keys.
    """
    kind: str
    element: Perm | None = None
    mapping: Callable[[VertexKey], VertexKey] | None = None
    direction: str = "auto"               # decreasing | increasing | auto
    acting: PermGroup | None = None       # equivariance group override


def intersect_centralizer_rule(t: Sequence[int]) -> ReductionRule:
    return ReductionRule("intersect-centralizer", element=tuple(t),
                         direction="decreasing")


def multiply_central_rule(z: Sequence[int]) -> ReductionRule:
    return ReductionRule("multiply-central", element=tuple(z),
                         direction="increasing")


def custom_rule(mapping: Callable[[VertexKey], VertexKey], *,
                direction: str = "auto",
                acting: PermGroup | None = None) -> ReductionRule:
    return ReductionRule("custom", mapping=mapping, direction=direction,
                         acting=acting)


@dataclass(frozen=True)
class ReductionReport:
    kind: str
    direction: str
    iterations: int
    vertices_before: int
    vertices_after: int
    equivariant: bool | None           # None = no acting group to check
    acting_order: int | None
    reduced_euler_before: int
    reduced_euler_after: int
    homology_checked: bool
    homology_before: tuple[int, ...] | None
    homology_after: tuple[int, ...] | None


def _closure_key(gen_bytes: Iterable[bytes], n: int, bound: int) -> VertexKey | None:
    """Element set of the subgroup generated by the given permutations, or
    None if it outgrows ``bound``."""
    idb = as_bytes(identity(n))
    gens = [b for b in set(gen_bytes) if b != idb]
    out = {idb}
    frontier = [idb]
    while frontier:
        nxt = []
        for x in frontier:
            for gb in gens:
                y = compose_bytes(x, gb)
                if y not in out:
                    if len(out) >= bound:
                        return None
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(out))


def _rule_map(rule: ReductionRule, cx: OrderComplex) -> Callable[[VertexKey], VertexKey | None]:
    if rule.kind == "intersect-centralizer":
        tb = as_bytes(rule.element)

        def f(key: VertexKey) -> VertexKey:
            return tuple(b for b in key
                         if compose_bytes(b, tb) == compose_bytes(tb, b))
        return f
    if rule.kind == "multiply-central":
        zb = as_bytes(rule.element)
        n = cx.group.degree
        bound = max((len(k) for k in cx.vertex_keys), default=1) + 1

        def f(key: VertexKey) -> VertexKey | None:
            return _closure_key(list(key) + [zb], n, bound)
        return f
    if rule.kind == "custom":
        if rule.mapping is None:
            raise ValidationError("custom rule needs a mapping")
        return rule.mapping
    raise ValidationError(f"unknown reduction rule kind {rule.kind!r}")


def _acting_group(rule: ReductionRule, cx: OrderComplex) -> PermGroup | None:
    if rule.acting is not None:
        return rule.acting
    if rule.kind in ("intersect-centralizer", "multiply-central"):
        return centralizer(cx.group, rule.element)
    return None


def poset_reduction(cx: OrderComplex, rule: ReductionRule, *,
                    check_homology: bool = True,
                    matrix_bound: int = DEFAULT_MATRIX_BOUND,
                    cell_bound: int = DEFAULT_CELL_BOUND
                    ) -> tuple[OrderComplex, ReductionReport]:
    """Apply a verified poset self-map and return the stable image complex.

    Verifies that the map lands in the vertex poset, preserves order, is
    pointwise comparable to the identity in one consistent direction, and is
    equivariant under the acting group; then iterates the map to its stable
    image and checks that the reduced Euler characteristic (and homology,
    when requested and affordable) agrees between source and image.
    """
    cx._require_full()
    if rule.kind != "custom":
        cx._require_group()
    f = _rule_map(rule, cx)
    images: list[int] = []
    for i, key in enumerate(cx.vertex_keys):
        img = f(key)
        idx = cx.vertex_index.get(img) if img is not None else None
        if idx is None:
            raise ValidationError(
                f"reduction rule leaves the poset at vertex {i} "
                f"(order {len(key)}): image is not a member")
        images.append(idx)
    # direction of pointwise comparability
    direction = rule.direction
    if direction == "auto":
        direction = "decreasing"
        for i, j in enumerate(images):
            if i != j:
                direction = ("decreasing"
                             if len(cx.vertex_keys[j]) < len(cx.vertex_keys[i])
                             else "increasing")
                break
    for i, j in enumerate(images):
        a, b = cx.vertex_sets[i], cx.vertex_sets[j]
        ok = b <= a if direction == "decreasing" else a <= b
        if not ok:
            raise ValidationError(
                f"reduction rule is not pointwise {direction} at vertex {i}")
    # order preservation on all comparable pairs
    for s in cx.simplices.get(1, ()):
        i, j = s
        if not cx.vertex_sets[images[i]] <= cx.vertex_sets[images[j]]:
            raise ValidationError(
                f"reduction rule does not preserve order on the pair "
                f"({i} < {j})")
    # equivariance under the acting group
    acting = _acting_group(rule, cx)
    equivariant: bool | None = None
    if acting is not None and cx.group is not None:
        n = cx.group.degree
        suffix = bytes(range(n, 256))
        for h in acting.generators:
            if is_identity(h):
                continue
            hb = as_bytes(h)
            for i, key in enumerate(cx.vertex_keys):
                moved = tuple(_conjugate_set(list(key), hb, n, suffix))
                mi = cx.vertex_index.get(moved)
                if mi is None:
                    raise ValidationError(
                        f"acting group does not preserve the complex at "
                        f"vertex {i}")
                want = tuple(_conjugate_set(list(cx.vertex_keys[images[i]]),
                                            hb, n, suffix))
                if cx.vertex_keys[images[mi]] != want:
                    raise ValidationError(
                        f"reduction rule is not equivariant at vertex {i}")
        equivariant = True
    # iterate to the stable image
    iterations = 1
    while True:
        nxt = [images[j] for j in images]
        if nxt == images:
            break
        images = nxt
        iterations += 1
    image_vertices = sorted(set(images))
    image = induced_subcomplex(cx, image_vertices, cell_bound=cell_bound)
    before = components_and_euler(cx)
    after = components_and_euler(image)
    if before.reduced_euler != after.reduced_euler:
        raise IncompleteSearch(
            "poset reduction changed the reduced Euler characteristic "
            f"({before.reduced_euler} -> {after.reduced_euler})")
    hom_before = hom_after = None
    checked = False
    if check_homology:
        try:
            hom_before = homology_ranks(cx, matrix_bound=matrix_bound)
            hom_after = homology_ranks(image, matrix_bound=matrix_bound)
            checked = True
        except ResourceBoundExceeded:
            hom_before = hom_after = None
        if checked:
            pad = max(len(hom_before), len(hom_after))
            a = tuple(hom_before) + (0,) * (pad - len(hom_before))
            b = tuple(hom_after) + (0,) * (pad - len(hom_after))
            if a != b:
                raise IncompleteSearch(
                    f"poset reduction changed homology ranks {a} -> {b}")
    report = ReductionReport(
        kind=rule.kind, direction=direction, iterations=iterations,
        vertices_before=cx.n_vertices, vertices_after=image.n_vertices,
        equivariant=equivariant,
        acting_order=acting.order if acting is not None else None,
        reduced_euler_before=before.reduced_euler,
        reduced_euler_after=after.reduced_euler,
        homology_checked=checked,
        homology_before=hom_before, homology_after=hom_after)
    return image, report


# ---------------------------------------------------------------------------
# contractibility certificates


@dataclass(frozen=True)
class Certificate:
    level: str                                  # CONE > COLLAPSIBLE > FP-ACYCLIC > NONE
    cone_vertex: VertexKey | None = None
    cone_pattern: str | None = None             # comparable | meet
    collapse_steps: tuple | None = None
    homology: tuple[int, ...] | None = None
    prime: int | None = None
    detail: str = ""


def _find_cone(cx: OrderComplex) -> tuple[int, str] | None:
    nv = cx.n_vertices
    fsets = cx.vertex_sets
    for a in range(nv):
        fa = fsets[a]
        if all(fa <= fsets[b] or fsets[b] <= fa for b in range(nv)):
            return a, "comparable"
    for a in range(nv):
        fa = fsets[a]
        ok = True
        for b in range(nv):
            meet = tuple(sorted(fa & fsets[b]))
            if meet not in cx.vertex_index:
                ok = False
                break
        if ok:
            return a, "meet"
    return None


def _greedy_collapse(cx: OrderComplex) -> tuple | None:
    """Collapse free faces in lexicographic order; returns the sequence of
    (free face, coface) removals when the complex collapses to one vertex."""
    live: set[tuple[int, ...]] = set()
    for ss in cx.simplices.values():
        live.update(ss)
    supersets: dict[tuple[int, ...], set[tuple[int, ...]]] = {s: set() for s in live}
    for s in live:
        if len(s) == 1:
            continue
        for k in range(1, len(s)):
            for face in combinations(s, k):
                supersets[face].add(s)
    heap = [(len(t), t) for t, sup in supersets.items() if len(sup) == 1]
    heapq.heapify(heap)
    steps = []
    while heap:
        _, tau = heapq.heappop(heap)
        if tau not in live:
            continue
        sup = supersets[tau]
        if len(sup) != 1:
            continue
        sigma = next(iter(sup))
        live.discard(tau)
        live.discard(sigma)
        steps.append((tau, sigma))
        for gone in (tau, sigma):
            if len(gone) == 1:
                continue
            for k in range(1, len(gone)):
                for face in combinations(gone, k):
                    if face == tau:
                        continue
                    sup2 = supersets.get(face)
                    if sup2 is not None:
                        sup2.discard(gone)
                        if len(sup2) == 1 and face in live:
                            heapq.heappush(heap, (len(face), face))
    if len(live) == 1:
        return tuple(steps)
    return None


def contractibility_certificate(cx: OrderComplex, *, prime: int | None = None,
                                check_all: bool = False,
                                collapse_bound: int = DEFAULT_COLLAPSE_BOUND,
                                matrix_bound: int = DEFAULT_MATRIX_BOUND
                                ) -> Certificate:
    """Strongest contractibility evidence: a cone vertex, then a full
    elementary-collapse sequence, then vanishing mod-p reduced homology.

    ``check_all`` also verifies the implication chain (a cone must collapse
    and be acyclic; a collapsible complex must be acyclic).
    """
    cx._require_full()
    p = prime if prime is not None else cx.prime
    if p is None:
        raise ValidationError("certificate needs a prime for the homology level")
    if cx.n_vertices == 0:
        return Certificate("NONE", homology=(), prime=p,
                           detail="empty complex (reduced Euler -1)")
    total = sum(cx.face_counts)
    cone = _find_cone(cx)
    collapse = None
    collapse_attempted = False
    if (check_all or cone is None) and total <= collapse_bound:
        collapse_attempted = True
        collapse = _greedy_collapse(cx)
    ranks = None
    if check_all or (cone is None and collapse is None):
        ranks = homology_ranks(cx, p, matrix_bound=matrix_bound)
    if check_all:
        if cone is not None and collapse_attempted and collapse is None:
            raise IncompleteSearch("cone complex failed to collapse")
        if (cone is not None or collapse is not None) and ranks is not None \
                and any(ranks):
            raise IncompleteSearch("contractible complex has nonzero homology")
    if cone is not None:
        a, pattern = cone
        return Certificate("CONE", cone_vertex=cx.vertex_keys[a],
                           cone_pattern=pattern, collapse_steps=collapse,
                           homology=ranks, prime=p,
                           detail=f"vertex {a} is a {pattern} apex")
    if collapse is not None:
        return Certificate("COLLAPSIBLE", collapse_steps=collapse,
                           homology=ranks, prime=p,
                           detail=f"collapses in {len(collapse)} steps")
    if ranks is not None and not any(ranks):
        return Certificate("FP-ACYCLIC", homology=ranks, prime=p,
                           detail=f"reduced homology vanishes mod {p}")
    extra = "" if collapse_attempted or cone is not None else \
        " (collapse skipped: simplex count above bound)"
    return Certificate("NONE", homology=ranks, prime=p,
                       detail=f"reduced mod-{p} ranks {ranks}{extra}")
