"""Text formats for shipped and user data: groups, tables, modular data.

Three UTF-8 formats, all line-oriented, all round-tripping exactly:

* group files — ``name:`` and ``degree: n`` headers, one generator per line
  in 1-based cycle notation, an optional ``classes:`` line pinning the
  expected class labels with their element orders and sizes, and
  ``# provenance:`` comments describing where the generators come from;
* table files — class labels, element orders, centralizer orders and prime
  power maps, followed by one ``chi <label>:`` line per irreducible whose
  values are written as sums of ``E(n)^k`` roots of unity;
* modular data files — a prime, the list of simple-module dimensions in
  characteristic p, and optional Cartan diagonal entries.

Every ingestion validates before anything else consumes the data: group
axioms come for free from the stabilizer chain, pinned class labels are
checked against a fresh class computation, tables must pass both
orthogonality relations exactly, and modular degrees must be positive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .chartab import Character, CharacterTable
from .classes import ClassData, ConjugacyClass, conjugacy_classes
from .cyclotomic import Cyc
from .errors import IncompleteSearch, ValidationError
from .group import PermGroup
from .perm import Perm, format_perm, parse_perm

__all__ = [
    "ClassPin",
    "GroupFile",
    "TableFile",
    "ModularData",
    "parse_cyc",
    "parse_group_file",
    "serialize_group_file",
    "read_group_file",
    "build_group",
    "ingest_group_file",
    "parse_table_file",
    "serialize_table_file",
    "table_from_file",
    "table_to_file",
    "ingest_table_file",
    "parse_modular_file",
    "serialize_modular_file",
    "ingest_modular_file",
]


# ---------------------------------------------------------------------------
# cyclotomic value expressions: sums of [coeff *] E(n) [^ k] and rationals


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?:"
    r"(?:(?P<coef>\d+(?:/\d+)?)\*)?E\((?P<n>\d+)\)(?:\^(?P<k>\d+))?"
    r"|(?P<rat>\d+(?:/\d+)?)"
    r")")


def parse_cyc(text: str, *, line: int | None = None) -> Cyc:
    """Parse an ``E(n)^k`` sum such as ``-1+2*E(7)^3`` or ``1/2*E(5)``."""
    s = text.strip()
    if not s:
        raise ValidationError("empty cyclotomic expression", line=line)
    pos = 0
    terms: list[tuple[Fraction, int, int]] = []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValidationError(
                f"malformed cyclotomic expression {text!r}",
                line=line, column=pos + 1)
        if pos > 0 and not m.group("sign"):
            raise ValidationError(
                f"missing +/- between terms in {text!r}",
                line=line, column=pos + 1)
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("rat") is not None:
            terms.append((sign * Fraction(m.group("rat")), 1, 0))
        else:
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            n = int(m.group("n"))
            if n < 1:
                raise ValidationError(
                    f"root order must be positive in {text!r}",
                    line=line, column=pos + 1)
            k = int(m.group("k")) if m.group("k") else 1
            terms.append((sign * coef, n, k))
        pos = m.end()
    return Cyc.from_terms(terms)


# ---------------------------------------------------------------------------
# shared line scanning


def _scan(text: str):
    """Yield (line_number, content) for non-empty, non-comment lines, and
    collect provenance comments on the side."""
    provenance: list[str] = []
    rows: list[tuple[int, str]] = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("provenance:"):
                provenance.append(body[len("provenance:"):].strip())
            continue
        rows.append((i, line))
    return rows, " ".join(provenance)


def _header(line: str, key: str) -> str | None:
    if line.lower().startswith(key + ":"):
        return line[len(key) + 1:].strip()
    return None


# ---------------------------------------------------------------------------
# group files


@dataclass(frozen=True)
class ClassPin:
    label: str
    element_order: int
    size: int


@dataclass(frozen=True)
class GroupFile:
    name: str
    degree: int
    generators: tuple[Perm, ...]
    class_pins: tuple[ClassPin, ...] = ()
    provenance: str = ""


def parse_group_file(text: str) -> GroupFile:
    rows, provenance = _scan(text)
    name: str | None = None
    degree: int | None = None
    gens: list[Perm] = []
    pins: list[ClassPin] = []
    for ln, line in rows:
        if (v := _header(line, "name")) is not None:
            name = v
        elif (v := _header(line, "degree")) is not None:
            try:
                degree = int(v)
            except ValueError:
                raise ValidationError(f"degree is not an integer: {v!r}",
                                      line=ln) from None
            if degree < 1:
                raise ValidationError("degree must be at least 1", line=ln)
        elif (v := _header(line, "classes")) is not None:
            for tok in v.split():
                parts = tok.split(":")
                if len(parts) != 3:
                    raise ValidationError(
                        f"class pin {tok!r} is not label:order:size", line=ln)
                try:
                    pins.append(ClassPin(parts[0], int(parts[1]), int(parts[2])))
                except ValueError:
                    raise ValidationError(
                        f"class pin {tok!r} has non-integer fields",
                        line=ln) from None
        elif line.startswith("("):
            if degree is None:
                raise ValidationError(
                    "generator appears before the degree header", line=ln)
            gens.append(parse_perm(line, degree, line=ln))
        else:
            raise ValidationError(f"unrecognized line {line!r}", line=ln)
    if name is None:
        raise ValidationError("missing name header")
    if degree is None:
        raise ValidationError("missing degree header")
    return GroupFile(name=name, degree=degree, generators=tuple(gens),
                     class_pins=tuple(pins), provenance=provenance)


def serialize_group_file(gf: GroupFile) -> str:
    out: list[str] = []
    if gf.provenance:
        out.append(f"# provenance: {gf.provenance}")
    out.append(f"name: {gf.name}")
    out.append(f"degree: {gf.degree}")
    out.extend(format_perm(g) for g in gf.generators)
    if gf.class_pins:
        toks = " ".join(f"{p.label}:{p.element_order}:{p.size}"
                        for p in gf.class_pins)
        out.append(f"classes: {toks}")
    return "\n".join(out) + "\n"


def read_group_file(path: str | Path) -> GroupFile:
    return parse_group_file(Path(path).read_text(encoding="utf-8"))


def build_group(gf: GroupFile) -> PermGroup:
    return PermGroup(gf.degree, list(gf.generators), name=gf.name)


def ingest_group_file(path: str | Path, *, validate_pins: bool = True,
                      ) -> PermGroup:
    """Parse, build and (when pins are present) validate a group file."""
    gf = read_group_file(path)
    G = build_group(gf)
    if gf.class_pins and validate_pins:
        cl = conjugacy_classes(G)
        if len(cl) != len(gf.class_pins):
            raise ValidationError(
                f"group has {len(cl)} classes, file pins {len(gf.class_pins)}")
        for pin, c in zip(gf.class_pins, cl):
            if (pin.label, pin.element_order, pin.size) != \
                    (c.label, c.element_order, c.size):
                raise ValidationError(
                    f"class pin {pin.label} (order {pin.element_order}, size "
                    f"{pin.size}) does not match computed class {c.label} "
                    f"(order {c.element_order}, size {c.size})")
    return G


# ---------------------------------------------------------------------------
# table files


@dataclass(frozen=True)
class TableFile:
    name: str
    labels: tuple[str, ...]
    element_orders: tuple[int, ...]
    centralizers: tuple[int, ...]
    powers: tuple[tuple[int, tuple[str, ...]], ...]  # (prime, image labels)
    characters: tuple[tuple[str, tuple[str, ...]], ...]  # (label, values)
    provenance: str = ""


def parse_table_file(text: str) -> TableFile:
    rows, provenance = _scan(text)
    name: str | None = None
    labels: tuple[str, ...] | None = None
    orders: tuple[int, ...] | None = None
    cents: tuple[int, ...] | None = None
    powers: list[tuple[int, tuple[str, ...]]] = []
    chis: list[tuple[str, tuple[str, ...]]] = []

    def ints(v: str, ln: int, what: str) -> tuple[int, ...]:
        try:
            return tuple(int(t) for t in v.split())
        except ValueError:
            raise ValidationError(f"non-integer {what} entry", line=ln) \
                from None

    for ln, line in rows:
        if (v := _header(line, "name")) is not None:
            name = v
        elif (v := _header(line, "classes")) is not None:
            labels = tuple(t.lower() for t in v.split())
        elif (v := _header(line, "orders")) is not None:
            orders = ints(v, ln, "orders")
        elif (v := _header(line, "centralizers")) is not None:
            cents = ints(v, ln, "centralizers")
        elif m := re.match(r"power\s+(\d+):\s*(.*)$", line):
            powers.append((int(m.group(1)),
                           tuple(t.lower() for t in m.group(2).split())))
        elif m := re.match(r"chi\s+(\S+):\s*(.*)$", line):
            chis.append((m.group(1), tuple(m.group(2).split())))
        else:
            raise ValidationError(f"unrecognized line {line!r}", line=ln)
    if name is None:
        raise ValidationError("missing name header")
    if labels is None:
        raise ValidationError("missing classes line")
    if orders is None:
        raise ValidationError("missing orders line")
    if cents is None:
        raise ValidationError("missing centralizers line")
    return TableFile(name=name, labels=labels, element_orders=orders,
                     centralizers=cents, powers=tuple(powers),
                     characters=tuple(chis), provenance=provenance)


def serialize_table_file(tf: TableFile) -> str:
    out: list[str] = []
    if tf.provenance:
        out.append(f"# provenance: {tf.provenance}")
    out.append(f"name: {tf.name}")
    out.append("classes: " + " ".join(tf.labels))
    out.append("orders: " + " ".join(str(o) for o in tf.element_orders))
    out.append("centralizers: " + " ".join(str(c) for c in tf.centralizers))
    for p, images in tf.powers:
        out.append(f"power {p}: " + " ".join(images))
    for label, values in tf.characters:
        out.append(f"chi {label}: " + " ".join(values))
    return "\n".join(out) + "\n"


def table_from_file(tf: TableFile) -> CharacterTable:
    """Build and fully validate a character table from ingested data."""
    r = len(tf.labels)
    if len(set(tf.labels)) != r:
        raise ValidationError("duplicate class labels")
    if len(tf.element_orders) != r or len(tf.centralizers) != r:
        raise ValidationError(
            "orders/centralizers length does not match the class count")
    if not tf.characters:
        raise ValidationError("table has no characters")
    if tf.element_orders[0] != 1:
        raise ValidationError("first class must be the identity class")
    order = tf.centralizers[0]
    sizes = []
    for lbl, cent in zip(tf.labels, tf.centralizers):
        if cent <= 0 or order % cent:
            raise ValidationError(
                f"centralizer order {cent} of class {lbl} does not divide "
                f"the group order {order}")
        sizes.append(order // cent)
    if sum(sizes) != order:
        raise ValidationError("class sizes do not sum to the group order")

    index = {lbl: i for i, lbl in enumerate(tf.labels)}
    classes = [ConjugacyClass(index=i, label=lbl, rep=(), size=sizes[i],
                              element_order=tf.element_orders[i],
                              centralizer_order=tf.centralizers[i],
                              cycle_type=())
               for i, lbl in enumerate(tf.labels)]
    data = ClassData(None, classes, None)

    for p, images in tf.powers:
        if len(images) != r:
            raise ValidationError(f"power {p} line has {len(images)} entries")
        try:
            pm = tuple(index[lbl] for lbl in images)
        except KeyError as exc:
            raise ValidationError(
                f"power {p} map names unknown class {exc.args[0]!r}") from None
        for j, t in enumerate(pm):
            o = tf.element_orders[j]
            want = o // (p if o % p == 0 else 1)
            if tf.element_orders[t] != want:
                raise ValidationError(
                    f"power {p} map sends {tf.labels[j]} (order {o}) to "
                    f"{tf.labels[t]} (order {tf.element_orders[t]}), "
                    f"expected order {want}")
        data._power_maps[p] = pm

    irreducibles: list[Character] = []
    seen: set[str] = set()
    columns: list[list[Cyc]] = [[] for _ in range(r)]
    for label, raw in tf.characters:
        if label in seen:
            raise ValidationError(f"duplicate character label {label!r}")
        seen.add(label)
        if len(raw) != r:
            raise ValidationError(
                f"character {label} has {len(raw)} values, expected {r}")
        values = tuple(parse_cyc(v) for v in raw)
        if not values[0].is_rational() or \
                values[0].as_rational().denominator != 1 or values[0] == Cyc(0):
            raise ValidationError(
                f"character {label} has non-positive-integer degree")
        for j, v in enumerate(values):
            columns[j].append(v)
        irreducibles.append(Character(label=label,
                                      degree=int(values[0].as_rational()),
                                      values=values))

    # inverse classes from the columns: j' is inverse to j when every
    # character takes conjugate values there
    inverse = []
    for j in range(r):
        want = [v.conjugate() for v in columns[j]]
        hits = [t for t in range(r) if columns[t] == want]
        if len(hits) != 1:
            raise ValidationError(
                f"no unique inverse class for {tf.labels[j]}; "
                "table columns are inconsistent")
        inverse.append(hits[0])
    data._power_maps[-1] = tuple(inverse)

    table = CharacterTable(data, irreducibles, name=tf.name)
    try:
        table.verify()
    except IncompleteSearch as exc:
        raise ValidationError(f"table rejected: {exc}") from None
    return table


def table_to_file(table: CharacterTable, *, provenance: str = "") -> TableFile:
    """Serialize an engine-computed table, including prime power maps."""
    classes = table.classes
    order = table.order
    primes = []
    n = order
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    powers = tuple(
        (p, tuple(classes[j].label for j in classes.power_map(p)))
        for p in primes)
    return TableFile(
        name=table.name or "table",
        labels=tuple(c.label for c in classes),
        element_orders=tuple(c.element_order for c in classes),
        centralizers=tuple(c.centralizer_order for c in classes),
        powers=powers,
        characters=tuple((chi.label, tuple(str(v) for v in chi.values))
                         for chi in table.irreducibles),
        provenance=provenance)


def ingest_table_file(path: str | Path) -> CharacterTable:
    return table_from_file(
        parse_table_file(Path(path).read_text(encoding="utf-8")))


# ---------------------------------------------------------------------------
# modular data files


@dataclass(frozen=True)
class ModularData:
    name: str
    prime: int
    degrees: tuple[int, ...]
    cartan: tuple[tuple[int, int], ...] = ()  # (simple degree, diagonal entry)
    provenance: str = ""

    def cartan_for(self, degree: int) -> int | None:
        for d, entry in self.cartan:
            if d == degree:
                return entry
        return None


def parse_modular_file(text: str) -> ModularData:
    rows, provenance = _scan(text)
    name: str | None = None
    prime: int | None = None
    degrees: tuple[int, ...] | None = None
    cartan: list[tuple[int, int]] = []
    for ln, line in rows:
        if (v := _header(line, "name")) is not None:
            name = v
        elif (v := _header(line, "prime")) is not None:
            try:
                prime = int(v)
            except ValueError:
                raise ValidationError("prime is not an integer",
                                      line=ln) from None
        elif (v := _header(line, "degrees")) is not None:
            try:
                degrees = tuple(int(t) for t in v.split())
            except ValueError:
                raise ValidationError("non-integer degree entry",
                                      line=ln) from None
        elif m := re.match(r"cartan\s+(\d+):\s*(\d+)$", line):
            cartan.append((int(m.group(1)), int(m.group(2))))
        else:
            raise ValidationError(f"unrecognized line {line!r}", line=ln)
    if name is None:
        raise ValidationError("missing name header")
    if prime is None:
        raise ValidationError("missing prime header")
    if degrees is None:
        raise ValidationError("missing degrees line")
    md = ModularData(name=name, prime=prime, degrees=degrees,
                     cartan=tuple(cartan), provenance=provenance)
    validate_modular(md)
    return md


def validate_modular(md: ModularData) -> None:
    if md.prime < 2 or any(md.prime % d == 0 for d in range(2, md.prime)):
        raise ValidationError(f"{md.prime} is not prime")
    if not md.degrees or any(d < 1 for d in md.degrees):
        raise ValidationError("degrees must be positive integers")
    for d, entry in md.cartan:
        if entry < 1:
            raise ValidationError(
                f"Cartan diagonal entry for degree {d} must be positive")
        if d not in md.degrees:
            raise ValidationError(
                f"Cartan entry names degree {d} absent from the degree list")


def serialize_modular_file(md: ModularData) -> str:
    out: list[str] = []
    if md.provenance:
        out.append(f"# provenance: {md.provenance}")
    out.append(f"name: {md.name}")
    out.append(f"prime: {md.prime}")
    out.append("degrees: " + " ".join(str(d) for d in md.degrees))
    for d, entry in md.cartan:
        out.append(f"cartan {d}: {entry}")
    return "\n".join(out) + "\n"


def ingest_modular_file(path: str | Path) -> ModularData:
    return parse_modular_file(Path(path).read_text(encoding="utf-8"))
