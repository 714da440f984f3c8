"""Persistent, content-addressed artifact cache.

Entries are keyed by a SHA-256 hash of the artifact kind, the engine
version, and a canonical JSON rendering of the inputs (for group-derived
artifacts: the degree and the sorted generator strings, so any group with
the same presentation hits the same entry).  Payloads are UTF-8 text with
a small header; writes go through a temporary file and ``os.replace`` so
a crashed writer never leaves a partial entry, and concurrent readers are
safe.

A cache hit must reproduce the bytes a fresh computation would produce.
That is spot-checked: in verification mode a seeded fraction of hits
(10% by default) is recomputed and compared byte-for-byte, and any
disagreement raises :class:`IncompleteSearch` — a wrong cache is a bug,
not a condition to paper over.

Two payload codecs live here as well: character tables travel as table
files (already validated on parse), and collection universes — the
expensive per-(group, prime) survey of all p-subgroup classes with their
radical/centric/distinguished flags — travel as one line per subgroup
class carrying its generators and flags.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from pathlib import Path

from . import ENGINE_VERSION
from .chartab import CharacterTable, character_table
from .classes import ClassData
from .collection import (
    CollectionMember,
    PCentralData,
    collection_universe,
)
from .errors import IncompleteSearch, ValidationError
from .formats import (
    parse_table_file,
    serialize_table_file,
    table_from_file,
    table_to_file,
)
from .group import PermGroup
from .perm import format_perm, parse_perm

__all__ = [
    "ArtifactCache",
    "CacheStats",
    "group_fingerprint",
    "cached_character_table",
    "cached_collection_universe",
    "universe_to_text",
    "universe_from_text",
]

ARTIFACT_KINDS = ("chain", "classes", "table", "collection", "complex")

_HEADER = "# lefschetz-cache v1"


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    writes: int = 0
    verified: int = 0

    def as_dict(self) -> dict:
        return {"hits": self.hits, "misses": self.misses,
                "writes": self.writes, "verified": self.verified}


def group_fingerprint(G: PermGroup) -> dict:
    """Canonical, hashable description of a group presentation."""
    return {
        "degree": G.degree,
        "generators": sorted(format_perm(g) for g in G.generators),
    }


class ArtifactCache:
    """Single-writer file cache with optional hit verification."""

    def __init__(self, root: str | Path, *, verify_fraction: float = 0.1,
                 seed: int | None = None):
        if not 0.0 <= verify_fraction <= 1.0:
            raise ValidationError("verify_fraction must lie in [0, 1]")
        self.root = Path(root)
        self.verify_fraction = verify_fraction
        self._rng = random.Random(seed)
        self.stats = CacheStats()

    # -- keys and paths ------------------------------------------------------

    @staticmethod
    def content_key(kind: str, inputs: Mapping) -> str:
        if kind not in ARTIFACT_KINDS:
            raise ValidationError(
                f"unknown artifact kind {kind!r}; "
                f"expected one of {', '.join(ARTIFACT_KINDS)}")
        canonical = json.dumps(
            {"kind": kind, "engine": ENGINE_VERSION, "inputs": inputs},
            sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def _path(self, kind: str, key: str) -> Path:
        return self.root / kind / f"{key}.txt"

    # -- raw entries ---------------------------------------------------------

    def lookup(self, kind: str, inputs: Mapping) -> str | None:
        key = self.content_key(kind, inputs)
        path = self._path(kind, key)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError:
            self.stats.misses += 1
            return None
        lines = text.split("\n", 3)
        if len(lines) < 4 or lines[0] != _HEADER \
                or lines[1] != f"# kind: {kind}" \
                or lines[2] != f"# engine: {ENGINE_VERSION}":
            self.stats.misses += 1
            return None
        self.stats.hits += 1
        return lines[3]

    def store(self, kind: str, inputs: Mapping, payload: str) -> str:
        key = self.content_key(kind, inputs)
        path = self._path(kind, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = "\n".join(
            (_HEADER, f"# kind: {kind}", f"# engine: {ENGINE_VERSION}",
             payload))
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
        self.stats.writes += 1
        return key

    def get_or_compute(self, kind: str, inputs: Mapping,
                       compute: Callable[[], str]) -> str:
        """Cached payload, recomputing (and spot-verifying hits) as needed."""
        payload = self.lookup(kind, inputs)
        if payload is None:
            payload = compute()
            self.store(kind, inputs, payload)
            return payload
        if self.verify_fraction and self._rng.random() < self.verify_fraction:
            fresh = compute()
            self.stats.verified += 1
            if fresh != payload:
                raise IncompleteSearch(
                    f"cache verification failed for {kind} entry "
                    f"{self.content_key(kind, inputs)}: cached payload does "
                    "not match recomputation")
        return payload


# ---------------------------------------------------------------------------
# payload codecs


def _attach_table(classes: ClassData, text: str) -> CharacterTable:
    """Parse a cached table file and rebind it to live class data."""
    ingested = table_from_file(parse_table_file(text))
    ic = ingested.classes
    if len(ic) != len(classes):
        raise IncompleteSearch("cached table has a different class count")
    for a, b in zip(ic, classes):
        if (a.label, a.element_order, a.size) != \
                (b.label, b.element_order, b.size):
            raise IncompleteSearch(
                f"cached table class {a.label} does not match the live "
                f"class {b.label}")
    return CharacterTable(classes, ingested.irreducibles, name=ingested.name)


def cached_character_table(cache: ArtifactCache | None,
                           classes: ClassData) -> CharacterTable:
    """The character table, through the persistent cache when one is given."""
    G = classes.group
    if cache is None or G is None:
        return character_table(classes)
    inputs = group_fingerprint(G)

    def compute() -> str:
        return serialize_table_file(table_to_file(character_table(classes)))

    return _attach_table(
        classes, cache.get_or_compute("table", inputs, compute))


def universe_to_text(central: PCentralData,
                     records: tuple[CollectionMember, ...]) -> str:
    lines = [
        "central: " + " ".join(str(i) for i in sorted(central.central_classes)),
        "benson: " + " ".join(str(i) for i in sorted(central.benson_classes)),
    ]
    flag_names = ("radical", "centric", "distinguished", "elementary_abelian",
                  "purely_central", "purely_noncentral")
    for m in records:
        flags = ",".join(n for n in flag_names if getattr(m, n))
        gens = ";".join(format_perm(g) for g in m.subgroup.generators)
        lines.append(f"member: order={m.order} orbit={m.orbit_size} "
                     f"normalizer={m.normalizer_order} flags={flags} "
                     f"gens={gens}")
    return "\n".join(lines) + "\n"


def universe_from_text(G: PermGroup, p: int, text: str,
                       ) -> tuple[PCentralData, tuple[CollectionMember, ...]]:
    central_line = benson_line = None
    members: list[CollectionMember] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("central:"):
            central_line = frozenset(
                int(x) for x in line.removeprefix("central:").split())
        elif line.startswith("benson:"):
            benson_line = frozenset(
                int(x) for x in line.removeprefix("benson:").split())
        elif line.startswith("member:"):
            fields = dict(part.split("=", 1)
                          for part in line.removeprefix("member:").split()
                          if "=" in part)
            gens = [parse_perm(s, G.degree)
                    for s in fields["gens"].split(";") if s]
            Q = G.subgroup(gens)
            flags = set(fields["flags"].split(",")) - {""}
            if Q.order != int(fields["order"]):
                raise IncompleteSearch(
                    f"cached subgroup generators give order {Q.order}, "
                    f"entry claims {fields['order']}")
            members.append(CollectionMember(
                subgroup=Q, order=int(fields["order"]),
                orbit_size=int(fields["orbit"]),
                normalizer_order=int(fields["normalizer"]),
                radical="radical" in flags,
                centric="centric" in flags,
                distinguished="distinguished" in flags,
                elementary_abelian="elementary_abelian" in flags,
                purely_central="purely_central" in flags,
                purely_noncentral="purely_noncentral" in flags))
        else:
            raise IncompleteSearch(f"unrecognized cache line {line!r}")
    if central_line is None or benson_line is None:
        raise IncompleteSearch("cached universe is missing header lines")
    return (PCentralData(p, central_line, benson_line), tuple(members))


def cached_collection_universe(
        cache: ArtifactCache | None, classes: ClassData, p: int,
        ) -> tuple[PCentralData, tuple[CollectionMember, ...]]:
    """The (group, prime) subgroup survey, persistently cached when possible.

    On a hit the parsed records are installed into the in-process cache that
    :func:`build_collection` consults, so later calls are free either way.
    """
    G = classes.group
    if cache is None or G is None:
        return collection_universe(classes, p)
    inproc = getattr(G, "_collection_cache", None)
    if inproc and p in inproc:
        return inproc[p]
    inputs = {"group": group_fingerprint(G), "prime": p}

    def compute() -> str:
        return universe_to_text(*collection_universe(classes, p))

    payload = cache.get_or_compute("collection", inputs, compute)
    central, records = universe_from_text(G, p, payload)
    if getattr(G, "_collection_cache", None) is None:
        G._collection_cache = {}
    G._collection_cache[p] = (central, records)
    return central, records
