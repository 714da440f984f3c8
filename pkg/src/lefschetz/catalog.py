"""Named access to shipped groups, tables and modular data.

Groups resolve from three sources, in order: the shipped data files
(``m12``, ``m24``, ``j2``, ``l3_2``, ``l3_3``, ``pgl2_9``), the symmetric /
alternating constructors (``s5``, ``a7``, ...), and filesystem paths to
``.group`` files.  Shipped files carry provenance comments and pinned class
labels; pins are validated once when the files are generated and can be
re-validated on demand through ``ingest_group_file``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import ValidationError
from .formats import (
    GroupFile,
    ModularData,
    build_group,
    ingest_group_file,
    parse_group_file,
    parse_modular_file,
    parse_table_file,
    table_from_file,
)
from .group import PermGroup

__all__ = [
    "catalog_groups",
    "catalog_tables",
    "catalog_modular",
    "load_group_file",
    "load_group",
    "resolve_group",
    "load_table",
    "load_modular",
    "symmetric_group",
    "alternating_group",
]


def _data_root():
    return resources.files("lefschetz").joinpath("data")


def _data_names(suffix: str) -> tuple[str, ...]:
    root = _data_root()
    if not root.is_dir():
        return ()
    return tuple(sorted(
        entry.name[:-len(suffix)]
        for entry in root.iterdir() if entry.name.endswith(suffix)))


def catalog_groups() -> tuple[str, ...]:
    return _data_names(".group")


def catalog_tables() -> tuple[str, ...]:
    return _data_names(".table")


def catalog_modular() -> tuple[str, ...]:
    return _data_names(".moddata")


def load_group_file(name: str) -> GroupFile:
    entry = _data_root().joinpath(f"{name}.group")
    if not entry.is_file():
        raise ValidationError(
            f"no shipped group named {name!r}; available: "
            + ", ".join(catalog_groups()))
    return parse_group_file(entry.read_text(encoding="utf-8"))


def load_group(name: str) -> PermGroup:
    """A shipped group by catalog name (pins trusted, not recomputed)."""
    return build_group(load_group_file(name))


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValidationError("degree must be at least 1")
    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroup(n, gens, name=f"s{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 1:
        raise ValidationError("degree must be at least 1")
    gens = []
    if n >= 3:
        gens.append(tuple([1, 2, 0] + list(range(3, n))))
    if n >= 4:
        if n % 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        else:
            gens.append(tuple([0] + list(range(2, n)) + [1]))
    return PermGroup(n, gens, name=f"a{n}")


def resolve_group(spec: str, *, validate_pins: bool = False) -> PermGroup:
    """Resolve a group from a catalog name, ``s<n>``/``a<n>``, or a path."""
    s = spec.strip()
    low = s.lower()
    if low in catalog_groups():
        if validate_pins:
            with resources.as_file(_data_root().joinpath(f"{low}.group")) as p:
                return ingest_group_file(p)
        return load_group(low)
    if len(low) > 1 and low[0] in "sa" and low[1:].isdigit():
        n = int(low[1:])
        if n > 64:
            raise ValidationError(
                f"constructor degree {n} is unreasonably large")
        return symmetric_group(n) if low[0] == "s" else alternating_group(n)
    path = Path(s)
    if path.suffix == ".group" or path.exists():
        return ingest_group_file(path, validate_pins=True)
    raise ValidationError(
        f"cannot resolve group {spec!r}: not a catalog name "
        f"({', '.join(catalog_groups())}), not s<n>/a<n>, and no such file")


def load_table(name: str):
    entry = _data_root().joinpath(f"{name}.table")
    if not entry.is_file():
        raise ValidationError(
            f"no shipped table named {name!r}; available: "
            + ", ".join(catalog_tables()))
    return table_from_file(
        parse_table_file(entry.read_text(encoding="utf-8")))


def load_modular(name: str, prime: int) -> ModularData:
    entry = _data_root().joinpath(f"{name}_mod{prime}.moddata")
    if not entry.is_file():
        raise ValidationError(
            f"no shipped mod-{prime} data for {name!r}; available: "
            + ", ".join(catalog_modular()))
    md = parse_modular_file(entry.read_text(encoding="utf-8"))
    if md.prime != prime:
        raise ValidationError(
            f"modular file {entry.name} declares prime {md.prime}")
    return md
