"""Lower-bound graphs for additive spanners and emulators.

Outer graphs on convex vector families, biclique and sourcewise inner
graphs, their obstacle product, and exact checks on all of it.
"""

from .convex_sets import (
    IntVec3,
    VectorFamily,
    assemble_wprime,
    certify_extreme_points,
    gen_intervals,
    gen_striped_families,
    gen_w,
    gen_w1,
    gen_w2,
)
from .graph import Graph
from .inner_graphs import build_biclique, build_sourcewise, verify_sourcewise
from .moves import delta_bound_audit, move_decompose
from .obstacle_product import replace_with_biclique, replace_with_sourcewise, subdivide
from .outer_graph import build_outer, build_outer_striped
from .stretch_lab import (
    emulator_certificate,
    emulator_to_spanner,
    greedy_plus_k_spanner,
    measure_stretch,
    subdivided_detour_certificate,
)
from .verify import (
    bfs_profile,
    check_clique_edge_disjoint,
    check_edge_coverage,
    check_pairwise_intersections,
    check_usp,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "IntVec3",
    "VectorFamily",
    "assemble_wprime",
    "bfs_profile",
    "build_biclique",
    "build_outer",
    "build_outer_striped",
    "build_sourcewise",
    "certify_extreme_points",
    "check_clique_edge_disjoint",
    "check_edge_coverage",
    "check_pairwise_intersections",
    "check_usp",
    "delta_bound_audit",
    "emulator_certificate",
    "emulator_to_spanner",
    "gen_intervals",
    "gen_striped_families",
    "gen_w",
    "gen_w1",
    "gen_w2",
    "greedy_plus_k_spanner",
    "measure_stretch",
    "move_decompose",
    "replace_with_biclique",
    "replace_with_sourcewise",
    "subdivide",
    "subdivided_detour_certificate",
    "verify_sourcewise",
]
