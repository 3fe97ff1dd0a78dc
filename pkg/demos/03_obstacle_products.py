"""
Obstacle products
=================

Subdivide the outer edges, then put an inner graph at every outer node.
A biclique gives the emulator instance; the sourcewise preserver gives
the spanner instance.
"""

from fractions import Fraction

from spannerlb import (
    build_outer,
    build_outer_striped,
    build_sourcewise,
    replace_with_biclique,
    replace_with_sourcewise,
)
from spannerlb.inner_graphs import verify_sourcewise
from spannerlb.verify import bfs_profile, check_clique_edge_disjoint

# %% Emulator mode.  Keep the whole biclique in each copy so that removing
# one connector leaves a detour through the copy.
ob = replace_with_biclique(build_outer(8, 4), psi=4, prune_inner=False)
print(ob.stats())
print("connectors disjoint:", check_clique_edge_disjoint(ob.clique_edge_sets()).ok)

p = ob.paths[0]
s, t = p.nodes[0], p.nodes[-1]
cut = ob.graph.without_edges(p.connector_edges()[:1])
print("length", p.length, "-> after one deletion", bfs_profile(cut, s, targets=[t]).dist[t])

# %% The sourcewise inner graph on its own.
sw = build_sourcewise(256, 4)
print(f"{sw.width}x{sw.height} lattice, f={sw.f}, nu={sw.nu}, tree depth {sw.depth}, beta {sw.beta}")
for line in verify_sourcewise(sw).lines():
    print("  ", line)

# %% Spanner mode: a striped outer graph with the preserver in every copy.
og = build_outer_striped(16, 8, 2, "relaxed", alpha=Fraction(1, 8), start_zone=((1, 4), (1, 4), (1, 8)))
sp = replace_with_sourcewise(og, build_sourcewise(64, 4), psi=6)
st = sp.stats()
print(st.nodes, "nodes", st.edges_by_kind, len(sp.paths), "paths")
