"""Exact computations with p-subgroup collections of finite permutation groups.

The package builds permutation groups from generator files, computes their
conjugacy classes and exact (cyclotomic) character tables, assembles
collections of p-subgroups (Quillen, Benson, Bouc and friends) together with
their order complexes and fixed-point subcomplexes, and evaluates the reduced
Lefschetz character of such a complex against block-theoretic projectivity
criteria.  Everything is exact: rational/cyclotomic arithmetic throughout, no
floating point.
"""

from __future__ import annotations

ENGINE_VERSION = "0.1.0"

__all__ = ["ENGINE_VERSION"]
