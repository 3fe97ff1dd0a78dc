"""
The outer graph
===============

Two copies of a 3D grid joined by the vector families.  Each critical
path alternates between the copies and climbs in z.
"""

from spannerlb import build_outer
from spannerlb.verify import (
    check_edge_coverage,
    check_pairwise_intersections,
    check_usp_many,
)

og = build_outer(8, 4)
st = og.stats()
print(st.nodes, "nodes,", st.edges, "edges after pruning,", st.isolated, "isolated")
print(st.paths, "critical paths; lengths:", st.length_hist)

# %% Follow one path by hand.
p = og.paths[0]
print("start", tuple(p.start), "w1", tuple(p.w1), "w2", tuple(p.w2))
for u in p.nodes:
    side, v = og.coord(u)
    print("  ", "LR"[side], tuple(v))

# %% Every path is the unique shortest path between its ends.
paths = [list(p.nodes) for p in og.paths]
usp = check_usp_many(og.graph, paths)
print(sum(r.ok for r in usp), "/", len(usp), "unique")

# Two paths share at most one edge, and every kept edge is used.
print("intersections ok:", check_pairwise_intersections(paths).ok)
print("coverage ok:", check_edge_coverage(og.graph, paths).ok)

# %% How many paths use an edge?
print("multiplicity histogram:", st.multiplicity_hist, "bound", st.multiplicity_bound)
