"""The layered outer graph G_O(a, r) and its critical paths.

Two copies (sides L and R) of the grid [a] x [a] x [ar].  W1 edges run
from L to R, W2 edges from R back to L, so a critical path alternates
w1, w2, w1, w2, ... and starts and ends on the L side.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .convex_sets import (
    STRICT,
    IntVec3,
    VectorFamily,
    gen_striped_families,
    gen_w,
)
from .graph import OUTER, Graph
from .verify import edge_multiplicity

L, R = 0, 1
SIDES = "LR"


@dataclass(frozen=True)
class OuterCriticalPath:
    start: IntVec3
    w1: IntVec3
    w2: IntVec3
    stripe: int | None
    nodes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def steps(self) -> int:
        return self.length // 2


@dataclass
class OuterStats:
    nodes: int
    edges_pre_prune: int
    edges: int
    isolated: int
    candidate_paths: int
    paths: int
    dropped_short: int
    length_hist: dict[int, int]
    multiplicity_max: int
    multiplicity_hist: dict[int, int]
    multiplicity_bound: int
    multiplicity_flag: bool


@dataclass
class OuterGraph:
    a: int
    r: int
    family: VectorFamily
    start_zone: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    min_length: int
    graph: Graph
    paths: list[OuterCriticalPath]
    candidate_paths: int = 0
    meta: dict = field(default_factory=dict)

    # -- ids ------------------------------------------------------------------
    @property
    def depth(self) -> int:
        return self.a * self.r

    def node_id(self, side: int, v: IntVec3) -> int:
        a, h = self.a, self.depth
        return ((side * a + v.x - 1) * a + v.y - 1) * h + v.z - 1

    def coord(self, nid: int) -> tuple[int, IntVec3]:
        a, h = self.a, self.depth
        rest, z = divmod(nid, h)
        rest, y = divmod(rest, a)
        side, x = divmod(rest, a)
        return side, IntVec3(x + 1, y + 1, z + 1)

    def in_grid(self, v: IntVec3) -> bool:
        return 1 <= v.x <= self.a and 1 <= v.y <= self.a and 1 <= v.z <= self.depth

    def isolated(self) -> list[int]:
        return [u for u in range(self.graph.n) if not self.graph.adj[u]]

    def edge_vector(self, u: int, v: int) -> IntVec3:
        """Vector of edge (u, v) oriented along the critical paths (tail to head)."""
        su, cu = self.coord(u)
        sv, cv = self.coord(v)
        if su == sv:
            raise ValueError("not an outer edge")
        d = cv - cu
        # L->R edges carry +w1, R->L edges carry +w2
        return d if d.z > 0 else -d

    def oriented(self, u: int, v: int) -> tuple[int, int]:
        """(tail, head) of an outer edge."""
        _, cu = self.coord(u)
        _, cv = self.coord(v)
        return (u, v) if cv.z > cu.z else (v, u)

    def stats(self) -> OuterStats:
        mult = edge_multiplicity([p.nodes for p in self.paths])
        hist = Counter(mult.values())
        mmax = max(mult.values(), default=0)
        bound = self.r // 2 + 1
        return OuterStats(
            nodes=self.graph.n,
            edges_pre_prune=edges_pre_prune(self.a, self.r, self.family),
            edges=self.graph.m,
            isolated=len(self.isolated()),
            candidate_paths=self.candidate_paths,
            paths=len(self.paths),
            dropped_short=self.candidate_paths - len(self.paths),
            length_hist=dict(sorted(Counter(p.length for p in self.paths).items())),
            multiplicity_max=mmax,
            multiplicity_hist=dict(sorted(hist.items())),
            multiplicity_bound=bound,
            multiplicity_flag=mmax > bound,
        )


def edges_pre_prune(a: int, r: int, fam: VectorFamily) -> int:
    """Number of W1 and W2 edges fitting in the grid before pruning."""
    h = a * r
    tot = 0
    for w in fam.w1 + fam.w2:
        tot += max(0, a - w.x) * max(0, a - w.y) * max(0, h - w.z)
    return tot


def default_start_zone(a: int, r: int):
    return ((1, a), (1, a), (1, max(1, r * r // 8)))


def _check_a(a: int) -> None:
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"a must be a positive int, got {a!r}")


def build_outer(
    a: int,
    r: int,
    family: VectorFamily | None = None,
    start_zone=None,
    min_length: int | None = None,
) -> OuterGraph:
    """Build G_O(a, r): generate critical paths, drop short ones, keep only
    edges that lie on a surviving path.  Isolated nodes stay in the id space.

    ``start_zone`` is ``((x0, x1), (y0, y1), (z0, z1))``, inclusive; by
    default [a] x [a] x [max(1, floor(r^2/8))].  ``min_length`` defaults to
    max(1, ceil(a / 4r)).
    """
    _check_a(a)
    fam = gen_w(r) if family is None else family
    if fam.r != r:
        raise ValueError("family built for a different r")
    zone = default_start_zone(a, r) if start_zone is None else tuple(tuple(z) for z in start_zone)
    if min_length is None:
        min_length = max(1, -(-a // (4 * r)))
    h = a * r
    n = 2 * a * a * h

    stub = OuterGraph(a, r, fam, zone, min_length, Graph([]), [])  # for id helpers

    def in_zone(v: IntVec3) -> bool:
        return all(lo <= c <= hi for c, (lo, hi) in zip(v, zone))

    paths: list[OuterCriticalPath] = []
    candidates = 0
    (x0, x1), (y0, y1), (z0, z1) = zone
    for sx in range(max(1, x0), min(a, x1) + 1):
        for sy in range(max(1, y0), min(a, y1) + 1):
            for sz in range(max(1, z0), min(h, z1) + 1):
                s = IntVec3(sx, sy, sz)
                for w1, w2 in fam.pairs:
                    if in_zone(s + w1):
                        continue
                    candidates += 1
                    step = w1 + w2
                    nodes = [stub.node_id(L, s)]
                    cur = s
                    while stub.in_grid(cur + step):
                        nodes.append(stub.node_id(R, cur + w1))
                        cur = cur + step
                        nodes.append(stub.node_id(L, cur))
                    if len(nodes) - 1 >= min_length:
                        paths.append(
                            OuterCriticalPath(s, w1, w2, fam.stripe_of.get(w1), tuple(nodes))
                        )

    edges = set()
    for p in paths:
        for u, v in zip(p.nodes, p.nodes[1:]):
            edges.add((u, v) if u < v else (v, u))
    labels = [None] * n
    for nid in range(n):
        side, v = stub.coord(nid)
        labels[nid] = ("outer", SIDES[side], v.x, v.y, v.z)
    g = Graph(labels, ((u, v, OUTER) for u, v in edges))
    return OuterGraph(a, r, fam, zone, min_length, g, paths, candidates)


def build_outer_striped(
    a: int,
    r: int,
    c: int,
    profile: str = STRICT,
    alpha: Fraction | None = None,
    beta: Fraction | None = None,
    start_zone=None,
    min_length: int | None = None,
) -> OuterGraph:
    """G_O(a, r, c): only same-stripe (w1, w2) pairs generate paths."""
    fam = gen_striped_families(r, c, profile, alpha, beta)
    return build_outer(a, r, fam, start_zone, min_length)
