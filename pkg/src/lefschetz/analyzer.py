"""Reduced Lefschetz characters of subgroup complexes and projectivity
screens for the associated virtual permutation modules.

The central object is the virtual character

    L(Delta) = sum over simplex orbits sigma of (-1)^dim(sigma) Ind_{G_sigma}^G(1) - 1,

whose value at g equals the reduced Euler characteristic of the fixed
subcomplex Delta^g.  Around it this module provides:

* ``euler_crosscheck`` -- verifies L(g) = chi~(Delta^g) on every conjugacy
  class (the defining invariant; a mismatch is a hard failure);
* ``block_distribution`` / ``projective_part_test`` -- splits L by p-blocks
  and tests vanishing on p-singular classes (a necessary condition for a
  virtual character to come from projective modules);
* ``double_cosets`` plus two classical screens for projective summands of
  induced trivial modules: the degree screen (a simple module S can occur as
  a projective cover inside Ind_H^G(1) only if dim S >= |H|_p) and the
  double-coset bound (the number d of double cosets HgH with p not dividing
  |H cap H^g| bounds c * m^2 for a projective cover with Cartan diagonal
  entry c occurring with multiplicity m);
* ``landrock_test`` -- the orbit-counting criterion for Ind_P^G(1), P a
  Sylow p-subgroup, to be projective-free: for every double coset PgP with
  trivial intersection and every p-section C, the number of P-orbits on
  C cap PgP must vanish mod p;
* ``vertex_report`` -- per class of p-subgroups Q containing no p-central
  element: the fixed subcomplex Delta^Q with components, homology and
  contractibility certificate, marking Q excluded as a vertex of a
  nonprojective summand whenever Delta^Q is mod-p acyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .blocks import BlockPartition
from .chartab import (
    CharacterTable,
    induce_values,
    trivial_character_values,
)
from .classes import ClassData, conjugacy_classes
from .collection import collection_universe
from .complexes import (
    OrderComplex,
    component_subcomplexes,
    components_and_euler,
    contractibility_certificate,
    fixed_subcomplex,
    homology_ranks,
    invariant_subcomplex,
    order_complex,
)
from .cyclotomic import Cyc
from .errors import IncompleteSearch, ResourceBoundExceeded, ValidationError
from .group import PermGroup, generic_orbit
from .perm import as_bytes, compose, conjugate, format_perm, from_bytes, identity

DEFAULT_COSET_BOUND = 200_000
DEFAULT_SECTION_CELL_BOUND = 250_000

__all__ = [
    "LefschetzCharacter",
    "lefschetz_character",
    "permutation_character",
    "EulerCrosscheck",
    "EulerRow",
    "euler_crosscheck",
    "ProjectiveTest",
    "projective_part_test",
    "BlockComponent",
    "ProjectivityReport",
    "block_distribution",
    "DoubleCoset",
    "double_cosets",
    "DegreeScreen",
    "projective_degree_screen",
    "DoubleCosetBound",
    "double_coset_bound",
    "SectionOrbitCount",
    "LandrockResult",
    "landrock_test",
    "VertexCandidate",
    "VertexCandidateReport",
    "vertex_report",
    "format_multiplicities",
]


# ---------------------------------------------------------------------------
# the reduced Lefschetz character


def permutation_character(sub_classes: ClassData, big_classes: ClassData,
                          fusion: tuple[int, ...] | None = None) -> tuple[Cyc, ...]:
    """Character of the permutation action of G on the cosets of H."""
    return induce_values(sub_classes, trivial_character_values(sub_classes),
                         big_classes, fusion)


@dataclass(frozen=True)
class LefschetzCharacter:
    """Virtual character sum((-1)^dim Ind_{G_sigma}^G(1)) - 1 of a complex."""

    table: CharacterTable
    values: tuple[int, ...]                      # one per conjugacy class
    multiplicities: tuple[tuple[str, int], ...]  # (irreducible label, mult)
    degree: int
    prime: int
    kind: str
    orbit_summary: tuple[tuple[int, int, int], ...]  # (dim, orbit size, |G_sigma|)

    def value_at(self, label: str) -> int:
        return self.values[self.table.classes.by_label(label).index]

    def multiplicity(self, label: str) -> int:
        return dict(self.multiplicities).get(label, 0)

    def __str__(self) -> str:
        return format_multiplicities(self.multiplicities)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "prime": self.prime,
            "kind": self.kind,
            "values": {c.label: self.values[c.index]
                       for c in self.table.classes},
            "multiplicities": dict(self.multiplicities),
            "decomposition": str(self),
            "orbit_summary": [
                {"dim": d, "orbit_size": s, "stabilizer_order": o}
                for d, s, o in self.orbit_summary],
        }


def format_multiplicities(pairs: Sequence[tuple[str, int]]) -> str:
    """Human form of a virtual character, e.g. ``63a + 90a + 126a - 2*7a``."""
    parts: list[str] = []
    for label, m in pairs:
        if m == 0:
            continue
        mag = abs(m)
        term = label if mag == 1 else f"{mag}*{label}"
        if not parts:
            parts.append(term if m > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if m > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def lefschetz_character(cx: OrderComplex,
                        table: CharacterTable) -> LefschetzCharacter:
    """The reduced Lefschetz character of a subgroup complex.

    Works from the orbit-level description: one induced trivial character per
    simplex orbit, signed by dimension, minus the trivial character.  The
    degree is recomputed from the orbit index sums and compared against the
    value at the identity.
    """
    if cx.collection is None or cx.group is None:
        raise ValidationError("complex has no subgroup collection attached")
    G = cx.group
    if table.group is not G:
        raise ValidationError(
            "character table does not belong to the complex's group")
    big = table.classes
    if not big.classes or big[0].element_order != 1:
        raise ValidationError("class data does not start with the identity")
    orb = cx if cx.mode == "orbit-level" else order_complex(
        cx.collection, "orbit-level")
    total = [Cyc(0) for _ in big]
    degree_sum = 0
    summary: list[tuple[int, int, int]] = []
    for dim, level in enumerate(orb.orbit_simplices()):
        sign = 1 if dim % 2 == 0 else -1
        for o in level:
            stab_classes = conjugacy_classes(o.stabilizer)
            pi = permutation_character(stab_classes, big)
            for k in range(len(big)):
                total[k] = total[k] + pi[k] * sign
            degree_sum += sign * o.size
            summary.append((dim, o.size, o.stabilizer.order))
    for k in range(len(big)):
        total[k] = total[k] - 1
    degree_sum -= 1
    values = []
    for k, v in enumerate(total):
        if not v.is_rational():
            raise IncompleteSearch(
                f"Lefschetz value at class {big[k].label} is irrational: {v}")
        r = v.as_rational()
        if r.denominator != 1:
            raise IncompleteSearch(
                f"Lefschetz value at class {big[k].label} is fractional: {r}")
        values.append(int(r))
    if values[0] != degree_sum:
        raise IncompleteSearch(
            f"degree disagreement: identity value {values[0]} vs orbit index "
            f"sum {degree_sum}")
    decomposition = table.decompose(total)
    recon = [Cyc(0) for _ in big]
    for label, m in decomposition.items():
        chi = table.by_label(label)
        for k in range(len(big)):
            recon[k] = recon[k] + chi.values[k] * m
    if any(recon[k] != total[k] for k in range(len(big))):
        raise IncompleteSearch(
            "irreducible decomposition does not reconstruct the character")
    mults = tuple((chi.label, decomposition[chi.label])
                  for chi in table.irreducibles if chi.label in decomposition)
    return LefschetzCharacter(
        table=table, values=tuple(values), multiplicities=mults,
        degree=degree_sum, prime=cx.collection.prime, kind=cx.collection.kind,
        orbit_summary=tuple(summary))


# ---------------------------------------------------------------------------
# fixed-point Euler cross-check


@dataclass(frozen=True)
class EulerRow:
    label: str
    lefschetz: int
    fixed_euler: int


@dataclass(frozen=True)
class EulerCrosscheck:
    passed: bool
    rows: tuple[EulerRow, ...]

    def to_dict(self) -> dict:
        return {"passed": self.passed,
                "rows": [{"class": r.label, "lefschetz": r.lefschetz,
                          "fixed_euler": r.fixed_euler} for r in self.rows]}


def euler_crosscheck(L: LefschetzCharacter, cx: OrderComplex) -> EulerCrosscheck:
    """Verify L(g) = chi~(Delta^g) for a representative of every class."""
    classes = L.table.classes
    rows = []
    for c in classes:
        if c.element_order == 1:
            if cx.mode == "orbit-level":
                e = cx.euler_from_orbits() - 1
            else:
                e = cx.reduced_euler
        else:
            e = fixed_subcomplex(cx, c.rep).reduced_euler
        rows.append(EulerRow(c.label, L.values[c.index], e))
        if L.values[c.index] != e:
            raise IncompleteSearch(
                f"Lefschetz value {L.values[c.index]} disagrees with the "
                f"fixed-point reduced Euler characteristic {e} at class "
                f"{c.label}")
    return EulerCrosscheck(passed=True, rows=tuple(rows))


# ---------------------------------------------------------------------------
# vanishing on p-singular classes


@dataclass(frozen=True)
class ProjectiveTest:
    passed: bool
    prime: int
    witness: str | None   # first p-singular class with a nonzero value

    def to_dict(self) -> dict:
        return {"passed": self.passed, "prime": self.prime,
                "witness": self.witness}


def projective_part_test(classes: ClassData, values: Sequence[int | Cyc],
                         p: int) -> ProjectiveTest:
    """Necessary condition for a virtual character to be a Z-combination of
    projective-module characters: vanishing on all p-singular classes."""
    for c in classes:
        if c.element_order % p == 0:
            v = values[c.index]
            nonzero = (v != 0) if isinstance(v, int) else (v != Cyc(0))
            if nonzero:
                return ProjectiveTest(False, p, c.label)
    return ProjectiveTest(True, p, None)


# ---------------------------------------------------------------------------
# block components


@dataclass(frozen=True)
class BlockComponent:
    index: int
    principal: bool
    defect: int
    labels: tuple[str, ...]                      # all irreducibles in the block
    multiplicities: tuple[tuple[str, int], ...]  # nonzero part of L in the block
    degree: int
    projective_compatible: bool
    witness: str | None

    def to_dict(self) -> dict:
        return {"index": self.index, "principal": self.principal,
                "defect": self.defect, "labels": list(self.labels),
                "multiplicities": dict(self.multiplicities),
                "component": format_multiplicities(self.multiplicities),
                "degree": self.degree,
                "projective_compatible": self.projective_compatible,
                "witness": self.witness}


@dataclass(frozen=True)
class ProjectivityReport:
    prime: int
    degree: int
    components: tuple[BlockComponent, ...]

    def nonzero_components(self) -> tuple[BlockComponent, ...]:
        return tuple(c for c in self.components if c.multiplicities)

    def to_dict(self) -> dict:
        return {"prime": self.prime, "degree": self.degree,
                "components": [c.to_dict() for c in self.components]}


def block_distribution(L: LefschetzCharacter,
                       partition: BlockPartition) -> ProjectivityReport:
    """Split the character by p-blocks; per block, test p-singular vanishing."""
    table = L.table
    part_labels = [lab for labs in partition.labels for lab in labs]
    if sorted(part_labels) != sorted(chi.label for chi in table.irreducibles):
        raise ValidationError(
            "block partition does not match the character table")
    classes = table.classes
    mult = dict(L.multiplicities)
    components = []
    total = [0] * len(classes)
    for b, labels in enumerate(partition.labels):
        mults = tuple((lab, mult[lab]) for lab in labels if mult.get(lab))
        vals = [0] * len(classes)
        degree = 0
        for lab, m in mults:
            chi = table.by_label(lab)
            degree += m * chi.degree
            for k in range(len(classes)):
                v = chi.values[k]
                if v.is_rational():
                    vals[k] += m * int(v.as_rational())
                else:
                    # irrational entries cannot cancel here; keep exact track
                    raise IncompleteSearch(
                        f"block component of {lab} has irrational values; "
                        "integer component expected for a Lefschetz character")
        for k in range(len(classes)):
            total[k] += vals[k]
        test = projective_part_test(classes, vals, partition.prime)
        components.append(BlockComponent(
            index=b, principal=(b == 0), defect=partition.defects[b],
            labels=partition.labels[b], multiplicities=mults, degree=degree,
            projective_compatible=test.passed, witness=test.witness))
    if tuple(total) != L.values:
        raise IncompleteSearch("block components do not sum to the character")
    return ProjectivityReport(prime=partition.prime, degree=L.degree,
                              components=tuple(components))


# ---------------------------------------------------------------------------
# double cosets


@dataclass(frozen=True)
class DoubleCoset:
    rep: tuple[int, ...]
    size: int
    cosets: int                    # number of right H-cosets inside
    intersection_order: int | None  # |H cap H^rep| when K = H

    def to_dict(self) -> dict:
        return {"rep": format_perm(self.rep), "size": self.size,
                "cosets": self.cosets,
                "intersection_order": self.intersection_order}


def _right_coset_keys(G: PermGroup, H: PermGroup, bound: int) -> list[bytes]:
    """Canonical keys (minimal representatives) of the right cosets Hg."""
    def key_of(perm) -> bytes:
        return as_bytes(H.minimal_coset_rep(perm))

    actions = [
        (lambda rb, g=g: key_of(compose(from_bytes(rb), g)))
        for g in G.generators]
    orb = generic_orbit(key_of(identity(G.degree)), actions, limit=bound)
    expected = G.order // H.order
    if len(orb) != expected:
        raise IncompleteSearch(
            f"coset enumeration found {len(orb)} cosets, expected {expected}")
    return list(orb)


def double_cosets(G: PermGroup, H: PermGroup, K: PermGroup | None = None, *,
                  coset_bound: int = DEFAULT_COSET_BOUND,
                  ) -> tuple[DoubleCoset, ...]:
    """The H-K double cosets of G, each with its size; when K is H the order
    of the intersection H cap H^g is derived from the coset count."""
    if G.order % H.order:
        raise ValidationError("H is not a subgroup: order does not divide |G|")
    same = K is None or K is H
    if K is None:
        K = H
    if G.order // H.order > coset_bound:
        raise ResourceBoundExceeded(
            f"{G.order // H.order} cosets exceed the double-coset bound",
            bound_name="coset_bound", bound_value=coset_bound)
    keys = _right_coset_keys(G, H, coset_bound)

    def key_of(perm) -> bytes:
        return as_bytes(H.minimal_coset_rep(perm))

    actions = [
        (lambda rb, k=k: key_of(compose(from_bytes(rb), k)))
        for k in K.generators]
    seen: set[bytes] = set()
    out = []
    for kb in keys:
        if kb in seen:
            continue
        orbit = generic_orbit(kb, actions)
        seen.update(orbit)
        n_cosets = len(orbit)
        inter = None
        if same:
            if H.order % n_cosets:
                raise IncompleteSearch(
                    f"{n_cosets} cosets inside a double coset do not divide "
                    f"|H| = {H.order}")
            inter = H.order // n_cosets
        out.append(DoubleCoset(rep=from_bytes(min(orbit)),
                               size=H.order * n_cosets,
                               cosets=n_cosets, intersection_order=inter))
    if sum(dc.size for dc in out) != G.order:
        raise IncompleteSearch("double coset sizes do not sum to |G|")
    return tuple(out)


# ---------------------------------------------------------------------------
# projectivity screens for induced trivial modules


@dataclass(frozen=True)
class DegreeScreen:
    prime: int
    sylow_part: int                 # p-part of |H|
    degrees: tuple[int, ...]
    survivors: tuple[int, ...]      # degrees >= sylow_part

    def to_dict(self) -> dict:
        return {"prime": self.prime, "sylow_part": self.sylow_part,
                "degrees": list(self.degrees),
                "survivors": list(self.survivors)}


def projective_degree_screen(H: PermGroup | int, p: int,
                             degrees: Sequence[int]) -> DegreeScreen:
    """Screen simple-module dimensions against |H|_p: the projective cover of
    S can be a summand of Ind_H^G(1) only if dim S >= |H|_p."""
    if not degrees:
        raise ValidationError(
            "no simple-module dimensions supplied; ingest modular data first")
    order = H if isinstance(H, int) else H.order
    part = 1
    while order % p == 0:
        order //= p
        part *= p
    survivors = tuple(d for d in degrees if d >= part)
    return DegreeScreen(prime=p, sylow_part=part,
                        degrees=tuple(degrees), survivors=survivors)


@dataclass(frozen=True)
class DoubleCosetBound:
    prime: int
    subgroup_order: int
    total: int                       # number of double cosets HgH
    d: int                           # those with p not dividing |H cap H^g|
    cartan: int | None
    max_multiplicity: int | None
    statement: str

    def to_dict(self) -> dict:
        return {"prime": self.prime, "subgroup_order": self.subgroup_order,
                "total": self.total, "d": self.d, "cartan": self.cartan,
                "max_multiplicity": self.max_multiplicity,
                "statement": self.statement}


def double_coset_bound(G: PermGroup, H: PermGroup, p: int, *,
                       cartan_diagonal: int | None = None,
                       coset_bound: int = DEFAULT_COSET_BOUND,
                       ) -> DoubleCosetBound:
    """d = #{HgH : p does not divide |H cap H^g|}.  The multiplicity m of a
    projective cover with Cartan diagonal entry c inside Ind_H^G(1) obeys
    c * m^2 <= d; with d = 0 the induced module has no projective summand."""
    dcs = double_cosets(G, H, coset_bound=coset_bound)
    d = sum(1 for dc in dcs if dc.intersection_order % p != 0)
    cartan = cartan_diagonal
    if d == 0:
        statement = ("d = 0: no projective summands in the induced trivial "
                     "module")
        mmax = 0
    elif cartan is not None:
        mmax = isqrt(d // cartan)
        statement = f"{cartan}*m^2 <= {d}, so m <= {mmax}"
    else:
        mmax = None
        statement = f"d = {d}"
    return DoubleCosetBound(prime=p, subgroup_order=H.order, total=len(dcs),
                            d=d, cartan=cartan, max_multiplicity=mmax,
                            statement=statement)


# ---------------------------------------------------------------------------
# the Sylow orbit-counting test


@dataclass(frozen=True)
class SectionOrbitCount:
    coset_rep: tuple[int, ...]
    section_label: str     # class of the p'-part identifying the section
    orbits: int

    def to_dict(self) -> dict:
        return {"coset_rep": format_perm(self.coset_rep),
                "section": self.section_label, "orbits": self.orbits}


@dataclass(frozen=True)
class LandrockResult:
    prime: int
    sylow_order: int
    action: str
    vacuous: bool                   # no trivial-intersection double coset
    projective_free: bool
    trivial_cosets: int
    counts: tuple[SectionOrbitCount, ...]
    witness: SectionOrbitCount | None

    def to_dict(self) -> dict:
        return {"prime": self.prime, "sylow_order": self.sylow_order,
                "action": self.action, "vacuous": self.vacuous,
                "projective_free": self.projective_free,
                "trivial_cosets": self.trivial_cosets,
                "counts": [c.to_dict() for c in self.counts],
                "witness": self.witness.to_dict() if self.witness else None}


def landrock_test(classes: ClassData, p: int, *, action: str = "conjugation",
                  cell_bound: int = DEFAULT_SECTION_CELL_BOUND,
                  coset_bound: int = DEFAULT_COSET_BOUND) -> LandrockResult:
    """Orbit-counting criterion: Ind_P^G(1) (P Sylow) is projective-free iff
    for every double coset PgP with P cap P^g = 1 and every p-section C the
    number of P-orbits on C cap PgP is divisible by p.

    ``action`` selects how P acts on the double coset: ``conjugation``
    (default; conjugation preserves both the double coset and each p-section)
    or ``cosets`` (count right cosets P*x meeting the section instead).
    """
    if action not in ("conjugation", "cosets"):
        raise ValidationError(f"unknown orbit action {action!r}")
    from .subgroups import sylow_subgroup
    G = classes.group
    if G is None:
        raise ValidationError("class data has no underlying group")
    P = sylow_subgroup(G, p)
    if P.order == G.order:
        # G is a p-group: the only double coset is G itself
        return LandrockResult(prime=p, sylow_order=P.order, action=action,
                              vacuous=True, projective_free=True,
                              trivial_cosets=0, counts=(), witness=None)
    dcs = double_cosets(G, P, coset_bound=coset_bound)
    trivial = [dc for dc in dcs if dc.intersection_order == 1]
    if not trivial:
        return LandrockResult(prime=p, sylow_order=P.order, action=action,
                              vacuous=True, projective_free=True,
                              trivial_cosets=0, counts=(), witness=None)
    if P.order ** 2 > cell_bound:
        raise ResourceBoundExceeded(
            f"double coset of size {P.order ** 2} exceeds the expansion bound",
            bound_name="cell_bound", bound_value=cell_bound)
    ppm = classes.p_prime_part_map(p)
    p_elements = list(P.elements(P.order))
    counts: list[SectionOrbitCount] = []
    witness = None
    for dc in trivial:
        rep = dc.rep
        cell = {compose(a, compose(rep, b))
                for a in p_elements for b in p_elements}
        if len(cell) != P.order ** 2:
            raise IncompleteSearch(
                "trivial-intersection double coset has the wrong size")
        per_section: dict[int, int] = {}
        if action == "conjugation":
            cell_keys = {as_bytes(x) for x in cell}
            seen: set[bytes] = set()
            actions = [
                (lambda xb, g=g: as_bytes(conjugate(from_bytes(xb), g)))
                for g in P.generators]
            for kb in sorted(cell_keys):
                if kb in seen:
                    continue
                orbit = generic_orbit(kb, actions)
                seen.update(orbit)
                sec = ppm[classes.identify(from_bytes(kb))]
                per_section[sec] = per_section.get(sec, 0) + 1
        else:
            incidences: set[tuple[bytes, int]] = set()
            for x in cell:
                key = as_bytes(P.minimal_coset_rep(x))
                incidences.add((key, ppm[classes.identify(x)]))
            for _, sec in incidences:
                per_section[sec] = per_section.get(sec, 0) + 1
        for sec in sorted(per_section):
            row = SectionOrbitCount(coset_rep=rep,
                                    section_label=classes[sec].label,
                                    orbits=per_section[sec])
            counts.append(row)
            if per_section[sec] % p != 0 and witness is None:
                witness = row
    return LandrockResult(prime=p, sylow_order=P.order, action=action,
                          vacuous=False, projective_free=witness is None,
                          trivial_cosets=len(trivial), counts=tuple(counts),
                          witness=witness)


# ---------------------------------------------------------------------------
# vertex candidates


@dataclass(frozen=True)
class VertexCandidate:
    order: int
    orbit_size: int
    normalizer_order: int
    fixed_counts: tuple[int, ...]
    components: int
    component_sizes: tuple[tuple[int, ...], ...]
    reduced_euler: int
    homology: tuple[int, ...] | None
    certificate_level: str
    component_certificates: tuple[str, ...]
    excluded: bool
    description: str
    conclusion: str

    def to_dict(self) -> dict:
        return {"order": self.order, "orbit_size": self.orbit_size,
                "normalizer_order": self.normalizer_order,
                "fixed_counts": list(self.fixed_counts),
                "components": self.components,
                "component_sizes": [list(s) for s in self.component_sizes],
                "reduced_euler": self.reduced_euler,
                "homology": list(self.homology) if self.homology is not None
                            else None,
                "certificate": self.certificate_level,
                "component_certificates": list(self.component_certificates),
                "excluded": self.excluded,
                "description": self.description,
                "conclusion": self.conclusion}


@dataclass(frozen=True)
class VertexCandidateReport:
    prime: int
    kind: str
    rows: tuple[VertexCandidate, ...]

    def to_dict(self) -> dict:
        return {"prime": self.prime, "kind": self.kind,
                "rows": [r.to_dict() for r in self.rows]}


def _describe_fixed(counts: tuple[int, ...], summary) -> str:
    if not counts or counts[0] == 0:
        return "empty"
    if len(counts) == 1:
        return f"{counts[0]} point{'s' if counts[0] != 1 else ''}"
    if summary.count == 1:
        shape = " / ".join(str(c) for c in counts)
        return f"connected, face counts {shape}"
    sizes = set(summary.sizes)
    if len(sizes) == 1:
        shape = ", ".join(str(c) for c in next(iter(sizes)))
        return f"{summary.count} components, each with face counts {shape}"
    return f"{summary.count} components"


def vertex_report(cx: OrderComplex, classes: ClassData, *,
                  matrix_bound: int | None = None) -> VertexCandidateReport:
    """Fixed-point data for every class of p-subgroups without p-central
    elements: such a subgroup can be the vertex of a nonprojective summand of
    the Lefschetz module only if its fixed subcomplex fails to be mod-p
    acyclic, so mod-p acyclicity excludes it."""
    if cx.collection is None:
        raise ValidationError("complex has no subgroup collection attached")
    p = cx.collection.prime
    _, records = collection_universe(classes, p)
    rows = []
    for mem in records:
        if not mem.purely_noncentral:
            continue
        fx = invariant_subcomplex(cx, mem.subgroup.generators)
        summary = components_and_euler(fx)
        kwargs = {"prime": p}
        if matrix_bound is not None:
            kwargs["matrix_bound"] = matrix_bound
        cert = contractibility_certificate(fx, **kwargs)
        homology = cert.homology
        if homology is None and fx.n_vertices:
            try:
                homology = homology_ranks(
                    fx, p, **({"matrix_bound": matrix_bound}
                              if matrix_bound is not None else {}))
            except ResourceBoundExceeded:
                homology = None
        comp_certs = tuple(
            contractibility_certificate(comp, **kwargs).level
            for comp in component_subcomplexes(fx))
        excluded = cert.level != "NONE"
        conclusion = (
            "fixed subcomplex is mod-p acyclic: excluded as a vertex of a "
            "nonprojective summand" if excluded else
            "fixed subcomplex has surviving reduced homology: candidate "
            "vertex of a nonprojective summand")
        rows.append(VertexCandidate(
            order=mem.order, orbit_size=mem.orbit_size,
            normalizer_order=mem.normalizer_order,
            fixed_counts=fx.face_counts, components=summary.count,
            component_sizes=summary.sizes, reduced_euler=summary.reduced_euler,
            homology=homology, certificate_level=cert.level,
            component_certificates=comp_certs, excluded=excluded,
            description=_describe_fixed(fx.face_counts, summary),
            conclusion=conclusion))
    return VertexCandidateReport(prime=p, kind=cx.collection.kind,
                                 rows=tuple(rows))
