"""Smoke the J2 p=3 pipeline end to end, with timings."""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lefschetz.analyzer import (
    block_distribution, euler_crosscheck, lefschetz_character,
    projective_part_test,
)
from lefschetz.blocks import class_mult_coefficient, p_blocks
from lefschetz.catalog import resolve_group
from lefschetz.chartab import character_table
from lefschetz.classes import conjugacy_classes
from lefschetz.collection import build_collection, is_p_centric, is_p_radical
from lefschetz.complexes import fixed_subcomplex, order_complex
from lefschetz.group import PermGroup
from lefschetz.subgroups import sylow_subgroup

t0 = time.time()
G = resolve_group("j2")
print(f"[{time.time()-t0:7.1f}s] group: order {G.order}")

cl = conjugacy_classes(G)
print(f"[{time.time()-t0:7.1f}s] {len(cl)} classes:",
      [(c.label, c.size) for c in cl])

tab = character_table(cl)
print(f"[{time.time()-t0:7.1f}s] table: degrees", sorted(tab.degrees))

idx = {c.label: c.index for c in cl}
xi = class_mult_coefficient(tab, idx["3a"], idx["3a"], idx["3b"])
print(f"[{time.time()-t0:7.1f}s] xi(3a,3a,3b) = {xi}")

# Sylow 3-subgroup composition: central vs noncentral elements
S = sylow_subgroup(G, 3)
counts = {"3a": 0, "3b": 0}
for g in S.elements():
    lab = cl[cl.identify(g)].label
    if lab in counts:
        counts[lab] += 1
print(f"[{time.time()-t0:7.1f}s] sylow3 order {S.order}, composition {counts}")

col = build_collection(cl, 3, "benson")
orders = sorted({m.order for m in col.members})
print(f"[{time.time()-t0:7.1f}s] benson: {len(col.members)} orbits, "
      f"{col.total_subgroups} total, orders {orders}")

cx = order_complex(col)
print(f"[{time.time()-t0:7.1f}s] complex: dim {cx.dim}, "
      f"faces {cx.face_counts}, {cx.n_vertices} vertices")

rep3b = cl[idx["3b"]].rep
fx = fixed_subcomplex(cx, rep3b)
print(f"[{time.time()-t0:7.1f}s] fixed(3b): {fx.n_vertices} vertices, "
      f"reduced euler {fx.reduced_euler}")

orb = order_complex(col, "orbit-level")
L = lefschetz_character(orb, tab)
print(f"[{time.time()-t0:7.1f}s] L degree {L.degree}, "
      f"multiplicities {L.multiplicities}")
print("  crosscheck:", euler_crosscheck(L, orb).passed)

bp = p_blocks(tab, 3)
bd = block_distribution(L, bp)
for comp in bd.components:
    if comp.degree != 0:
        print(f"  block {comp.index} defect {comp.defect} "
              f"principal={comp.principal}: {comp.multiplicities} "
              f"degree {comp.degree} "
              f"projective_compatible={comp.projective_compatible}")

# centric-radical: fixed set of a 3-central element has 10 vertices
col2 = build_collection(cl, 3, "centric-radical")
cx2 = order_complex(col2)
rep3a = cl[idx["3a"]].rep
fx2 = fixed_subcomplex(cx2, rep3a)
print(f"[{time.time()-t0:7.1f}s] centric-radical: {col2.total_subgroups} "
      f"total in {len(col2.members)} orbits, "
      f"fixed(3a) vertices {fx2.n_vertices}")

# 3-central subgroup is radical but not centric
za = PermGroup(G.degree, [rep3a])
print(f"[{time.time()-t0:7.1f}s] <3a>: radical={is_p_radical(G, za, 3)}, "
      f"centric={is_p_centric(G, za, 3)}")
print("TOTAL", time.time() - t0)
