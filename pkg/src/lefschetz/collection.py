"""Named collections of p-subgroups and their membership predicates.

A collection is a G-closed family of nontrivial p-subgroups, stored as one
representative per conjugacy class with its orbit size and flags:

* quillen           — elementary abelian subgroups,
* benson            — elementary abelian subgroups all of whose order-p
                      elements lie in the closure of the p-central classes
                      under commuting products,
* bouc              — p-radical subgroups (Q = O_p(N_G(Q))),
* distinguished-bouc — p-radical with a p-central element in the center,
* centric-radical   — p-radical and p-centric (Z(Q) is a Sylow p-subgroup
                      of C_G(Q)).

An element is p-central when it has order p and lies in the center of some
Sylow p-subgroup; "purely central" subgroups have every order-p element
p-central, "purely noncentral" ones have none.
"""

from __future__ import annotations

from dataclasses import dataclass

from .backtrack import centralizer_of_subgroup
from .blocks import closed_class_check
from .chartab import CharacterTable
from .classes import ClassData
from .errors import ResourceBoundExceeded
from .group import PermGroup
from .perm import perm_order
from .subgroups import (
    DEFAULT_SYLOW_ENUM_BOUND,
    center,
    int_p_part,
    is_elementary_abelian,
    is_p_group,
    normalizer,
    p_core,
    p_subgroup_classes,
    sylow_subgroup,
)

KINDS = ("quillen", "benson", "bouc", "distinguished-bouc", "centric-radical")


@dataclass(frozen=True)
class PCentralData:
    prime: int
    central_classes: frozenset[int]
    benson_classes: frozenset[int]


def p_central_classes(classes: ClassData, p: int,
                      *, table: CharacterTable | None = None) -> PCentralData:
    """Classes of p-central elements (order p, meeting the center of a Sylow
    p-subgroup) and their closure under commuting products."""
    G = classes.group
    if G.order % p:
        return PCentralData(p, frozenset(), frozenset())
    S = sylow_subgroup(G, p)
    Z = center(S)
    central = set()
    for z in Z.elements(S.order):
        if perm_order(z) == p:
            central.add(classes.identify(z))
    result = closed_class_check(classes, central, table=table)
    if result.closure is None:
        raise ResourceBoundExceeded(
            "commuting-product closure could not be decided")
    return PCentralData(p, frozenset(central), frozenset(result.closure))


def _require_p_subgroup(Q: PermGroup, p: int) -> None:
    if Q.order == 1:
        raise ValueError("the trivial subgroup is not a collection member")
    if not is_p_group(Q, p):
        raise ValueError(f"subgroup of order {Q.order} is not a {p}-group")


def is_p_radical(G: PermGroup, Q: PermGroup, p: int) -> bool:
    """Q = O_p(N_G(Q))."""
    _require_p_subgroup(Q, p)
    N = normalizer(G, Q)
    return p_core(N, p).order == Q.order


def is_p_centric(G: PermGroup, Q: PermGroup, p: int) -> bool:
    """Z(Q) is a Sylow p-subgroup of C_G(Q)."""
    _require_p_subgroup(Q, p)
    C = centralizer_of_subgroup(G, Q)
    return center(Q).order == int_p_part(C.order, p)


def is_distinguished(classes: ClassData, central: PCentralData,
                     Q: PermGroup) -> bool:
    """Z(Q) contains a p-central element."""
    p = central.prime
    _require_p_subgroup(Q, p)
    for z in center(Q).elements(Q.order):
        if perm_order(z) == p and classes.identify(z) in central.central_classes:
            return True
    return False


@dataclass(frozen=True)
class CollectionMember:
    subgroup: PermGroup
    order: int
    orbit_size: int
    normalizer_order: int
    radical: bool
    centric: bool
    distinguished: bool
    elementary_abelian: bool
    purely_central: bool
    purely_noncentral: bool


@dataclass(frozen=True)
class Collection:
    group: PermGroup
    prime: int
    kind: str
    members: tuple[CollectionMember, ...]
    central: PCentralData

    @property
    def total_subgroups(self) -> int:
        return sum(m.orbit_size for m in self.members)

    def __len__(self) -> int:
        return len(self.members)


def _member_record(G: PermGroup, classes: ClassData, central: PCentralData,
                   Q: PermGroup, p: int) -> CollectionMember:
    N = normalizer(G, Q)
    C = centralizer_of_subgroup(G, Q)
    Z = center(Q)
    radical = p_core(N, p).order == Q.order
    centric = Z.order == int_p_part(C.order, p)
    distinguished = False
    for z in Z.elements(Q.order):
        if perm_order(z) == p and classes.identify(z) in central.central_classes:
            distinguished = True
            break
    memberships = {classes.identify(x) for x in Q.elements(Q.order)
                   if perm_order(x) == p}
    purely_central = memberships <= central.central_classes
    purely_noncentral = not (memberships & central.central_classes)
    return CollectionMember(
        subgroup=Q, order=Q.order, orbit_size=G.order // N.order,
        normalizer_order=N.order, radical=radical, centric=centric,
        distinguished=distinguished,
        elementary_abelian=is_elementary_abelian(Q, p),
        purely_central=purely_central, purely_noncentral=purely_noncentral)


def _selects(kind: str, m: CollectionMember, central: PCentralData,
             classes: ClassData) -> bool:
    if kind == "quillen":
        return m.elementary_abelian
    if kind == "benson":
        if not m.elementary_abelian:
            return False
        memberships = {classes.identify(x)
                       for x in m.subgroup.elements(m.order)
                       if perm_order(x) == central.prime}
        return memberships <= central.benson_classes
    if kind == "bouc":
        return m.radical
    if kind == "distinguished-bouc":
        return m.radical and m.distinguished
    if kind == "centric-radical":
        return m.radical and m.centric
    raise ValueError(f"unknown collection kind {kind!r}")


def collection_universe(classes: ClassData, p: int, *,
                        table: CharacterTable | None = None,
                        sylow_bound: int = DEFAULT_SYLOW_ENUM_BOUND,
                        ) -> tuple[PCentralData, tuple[CollectionMember, ...]]:
    """Flags for every class of nontrivial p-subgroups (cached per group)."""
    G = classes.group
    cache = getattr(G, "_collection_cache", None)
    if cache is None:
        cache = G._collection_cache = {}
    if p in cache:
        return cache[p]
    central = p_central_classes(classes, p, table=table)
    records = tuple(_member_record(G, classes, central, Q, p)
                    for Q in p_subgroup_classes(G, p, sylow_bound=sylow_bound))
    cache[p] = (central, records)
    return central, records


def build_collection(classes: ClassData, p: int, kind: str, *,
                     table: CharacterTable | None = None,
                     sylow_bound: int = DEFAULT_SYLOW_ENUM_BOUND,
                     ) -> Collection:
    """All conjugacy classes of nontrivial p-subgroups, filtered by kind."""
    if kind not in KINDS:
        raise ValueError(f"unknown collection kind {kind!r}; "
                         f"expected one of {', '.join(KINDS)}")
    G = classes.group
    central, records = collection_universe(classes, p, table=table,
                                           sylow_bound=sylow_bound)
    members = [m for m in records if _selects(kind, m, central, classes)]
    return Collection(group=G, prime=p, kind=kind, members=tuple(members),
                      central=central)
