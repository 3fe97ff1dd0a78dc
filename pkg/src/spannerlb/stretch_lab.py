"""Spanners, emulators and stretch measurements on obstacle products."""

from __future__ import annotations

import math
import random
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import CLIQUE, Graph, ekey
from .moves import (  # noqa: F401  re-exported
    Move,
    MoveAudit,
    MoveDecomposition,
    backward_detours,
    delta_bound_audit,
    move_decompose,
    sample_alternate_paths,
    truncated_critical_path,
)
from .obstacle_product import ObstacleGraph
from .verify import (
    bfs_path,
    bfs_profile,
    check_usp,
    dijkstra_profile,
    weighted_adjacency,
)

INF = math.inf


@dataclass
class Emulator:
    """Weighted graph on the node set of a host graph."""

    n: int
    weights: dict[tuple[int, int], int] = field(default_factory=dict)

    def add(self, u: int, v: int, w: int) -> None:
        if u == v:
            raise ValueError("self loop")
        self.weights[ekey(u, v)] = w

    @property
    def m(self) -> int:
        return len(self.weights)

    def wadj(self):
        return weighted_adjacency(self.n, self.weights)

    @classmethod
    def from_graph(cls, g: Graph) -> Emulator:
        return cls(g.n, {e: 1 for e in g.kind})


# -- greedy +k spanner -------------------------------------------------------


@dataclass
class SpannerResult:
    graph: Graph
    k: int
    greedy_edges: int
    repair_paths: int


def greedy_plus_k_spanner(g: Graph, k: int, repair: bool = True) -> SpannerResult:
    """Greedy additive spanner.

    Scan edges in sorted order and keep (u, v) when the partial spanner has
    dist(u, v) > k + 1.  The scan alone bounds stretch per edge, not per
    pair, so a repair pass then adds a shortest G-path for every pair whose
    error still exceeds k.  The result satisfies dist_H <= dist_G + k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    adj: list[list[int]] = [[] for _ in range(g.n)]
    chosen: set[tuple[int, int]] = set()

    def add(u, v):
        e = ekey(u, v)
        if e not in chosen:
            chosen.add(e)
            adj[u].append(v)
            adj[v].append(u)

    for u, v, _ in g.edges():
        prof = bfs_profile(adj, u, max_depth=k + 1, targets=[v])
        if v not in prof.dist:
            add(u, v)
    greedy = len(chosen)
    repairs = 0
    if repair:
        for s in range(g.n):
            if not g.adj[s]:
                continue
            gp = bfs_profile(g, s)
            while True:
                hp = bfs_profile(adj, s)
                bad = [t for t, d in sorted(gp.dist.items()) if hp.dist.get(t, INF) > d + k]
                if not bad:
                    break
                path = bfs_path(g, s, bad[-1], gp)
                for a, b in zip(path, path[1:]):
                    add(a, b)
                repairs += 1
    h = Graph(g.labels, ((u, v, g.kind[(u, v)]) for u, v in sorted(chosen)))
    return SpannerResult(h, k, greedy, repairs)


# -- stretch -----------------------------------------------------------------


@dataclass
class StretchReport:
    pairs: int
    max_error: float
    argmax: tuple[int, int] | None
    histogram: dict[float, int]
    disconnected: int

    @property
    def finite(self) -> bool:
        return self.disconnected == 0


def _dist_fn(h: Graph | Emulator):
    if isinstance(h, Graph):
        return lambda s, targets: bfs_profile(h, s, targets=targets).dist
    wadj = h.wadj()
    return lambda s, targets: dijkstra_profile(wadj, s).dist


def measure_stretch(g: Graph, h: Graph | Emulator, pairs: Iterable[tuple[int, int]]) -> StretchReport:
    """Additive error dist_H - dist_G over the given pairs.

    Pairs disconnected in H count as infinite error.  Pairs disconnected in
    G are skipped.
    """
    by_src: dict[int, list[int]] = defaultdict(list)
    for s, t in pairs:
        by_src[s].append(t)
    hdist = _dist_fn(h)
    hist: Counter = Counter()
    best, arg, disc, cnt = -INF, None, 0, 0
    for s in sorted(by_src):
        ts = by_src[s]
        gd = bfs_profile(g, s, targets=ts).dist
        hd = hdist(s, ts)
        for t in ts:
            if t not in gd:
                continue
            cnt += 1
            err = hd[t] - gd[t] if t in hd else INF
            if err == INF:
                disc += 1
            hist[err] += 1
            if err > best:
                best, arg = err, (s, t)
    return StretchReport(cnt, best if cnt else 0, arg, dict(sorted(hist.items())), disc)


# -- emulators ---------------------------------------------------------------


@dataclass
class EdgeAudit:
    edge: tuple[int, int]
    path: int | None  # critical path containing both ends, None if none
    weight: int
    host_dist: int | None
    added_length: int
    clique_edges: int
    bound: Fraction
    preserved: bool

    @property
    def within_bound(self) -> bool:
        return self.clique_edges <= self.bound


@dataclass
class ConversionResult:
    spanner: Graph
    audits: list[EdgeAudit]
    skipped: list[tuple[int, int]]

    @property
    def converted(self) -> list[EdgeAudit]:
        return [a for a in self.audits if a.path is not None]


def emulator_to_spanner(ob: ObstacleGraph, em: Emulator) -> ConversionResult:
    """Replace each emulator edge whose ends share a critical path by one
    shortest host path; other edges are dropped.

    The subpath of the shared critical path is used when it is shortest;
    otherwise the smallest-id BFS path.  Each conversion is audited for
    exact distance and for its clique edge count against 2a/r.
    """
    g = ob.graph
    on: dict[int, list[int]] = defaultdict(list)
    pos: list[dict[int, int]] = []
    for i, p in enumerate(ob.paths):
        pos.append({v: j for j, v in enumerate(p.nodes)})
        for v in p.nodes:
            on[v].append(i)
    bound = Fraction(2 * ob.outer.a, ob.outer.r)
    keep: set[tuple[int, int]] = set()
    pending = []
    skipped = []
    for (u, v), w in sorted(em.weights.items()):
        common = sorted(set(on.get(u, ())) & set(on.get(v, ())))
        if not common:
            skipped.append((u, v))
            continue
        pi = common[0]
        prof = bfs_profile(g, u, targets=[v])
        d = prof.dist.get(v)
        i, j = sorted((pos[pi][u], pos[pi][v]))
        sub = ob.paths[pi].nodes[i : j + 1]
        if d is not None and len(sub) - 1 == d:
            route = list(sub)
        else:
            route = bfs_path(g, u, v, prof) or []
        es = [ekey(a, b) for a, b in zip(route, route[1:])]
        keep.update(es)
        cl = sum(1 for e in es if g.kind[e] == CLIQUE)
        pending.append(((u, v), pi, w, d, len(es), cl))
    h = Graph(g.labels, ((a, b, g.kind[(a, b)]) for a, b in sorted(keep)))
    audits = []
    for (u, v), pi, w, d, ln, cl in pending:
        hd = bfs_profile(h, u, targets=[v]).dist.get(v)
        audits.append(EdgeAudit((u, v), pi, w, d, ln, cl, bound, hd is not None and hd == d == w))
    return ConversionResult(h, audits, skipped)


@dataclass
class EmulatorVerdict:
    edges: int
    paths: int
    edge_threshold: int  # floor(|Pi| / 32)
    edge_threshold_met: bool
    clique_edges: int
    clique_threshold: Fraction  # (a/(8r) - 1) |Pi|
    clique_threshold_met: bool
    witness: int | None  # index of the critical path with the largest error
    witness_error: float
    witness_bound: int  # min(2 * missing clique edges, psi) on that path
    certified: bool


def emulator_certificate(ob: ObstacleGraph, em: Emulator) -> EmulatorVerdict:
    """Run the emulator-to-spanner pipeline and look for a stretch witness.

    Threshold constants are taken literally.  The witness search always
    runs; ``certified`` is set only when both thresholds hold and the
    witness error reaches its bound.
    """
    g = ob.graph
    npaths = len(ob.paths)
    e_thr = npaths // 32
    conv = emulator_to_spanner(ob, em)
    h2 = conv.spanner
    cl = sum(1 for k in h2.kind.values() if k == CLIQUE)
    a, r = ob.outer.a, ob.outer.r
    c_thr = (Fraction(a, 8 * r) - 1) * npaths
    wadj = em.wadj()
    best, best_err, best_bound = None, -INF, 0
    for i, p in enumerate(ob.paths):
        s, t = p.nodes[0], p.nodes[-1]
        gd = bfs_profile(g, s, targets=[t]).dist[t]
        hd = dijkstra_profile(wadj, s).dist.get(t, INF)
        err = hd - gd
        missing = sum(1 for e in p.connector_edges() if e not in h2.kind)
        if err > best_err:
            best, best_err, best_bound = i, err, min(2 * missing, ob.psi)
    e_ok = em.m < e_thr
    c_ok = cl < c_thr
    return EmulatorVerdict(
        em.m, npaths, e_thr, e_ok, cl, c_thr, c_ok, best, best_err, best_bound,
        e_ok and c_ok and best is not None and best_err >= best_bound,
    )


def critical_pair_emulator(ob: ObstacleGraph, count: int | None = None, seed: int = 0) -> Emulator:
    """Emulator whose edges join the ends of critical paths, weighted by
    host distance.  ``count`` picks a seeded random subset of paths."""
    idx = list(range(len(ob.paths)))
    if count is not None:
        idx = sorted(random.Random(seed).sample(idx, min(count, len(idx))))
    em = Emulator(ob.graph.n)
    for i in idx:
        p = ob.paths[i]
        s, t = p.nodes[0], p.nodes[-1]
        em.add(s, t, bfs_profile(ob.graph, s, targets=[t]).dist[t])
    return em


# -- detours around a critical path ------------------------------------------


@dataclass
class DetourCertificate:
    path: int
    mode: str  # "same-sequence", "detour" or "disconnected"
    difference: float
    bound: int
    holds: bool
    missing_connectors: int
    outer_steps: int
    outer_steps_star: int


def _chain_index(ob: ObstacleGraph) -> dict[tuple[int, int], tuple[int, int]]:
    out = {}
    for key, seq in ob.chains.items():
        for a, b in zip(seq, seq[1:]):
            out[ekey(a, b)] = key
    return out


def outer_sequence(ob: ObstacleGraph, path: Sequence[int], chain_of=None) -> list[tuple[int, int]]:
    """Subdivided outer edges traversed by ``path``, in order."""
    chain_of = _chain_index(ob) if chain_of is None else chain_of
    seq: list[tuple[int, int]] = []
    for a, b in zip(path, path[1:]):
        key = chain_of.get(ekey(a, b))
        if key is not None and (not seq or seq[-1] != key):
            seq.append(key)
    return seq


def subdivided_detour_certificate(ob: ObstacleGraph, h: Graph, index: int) -> DetourCertificate:
    """Compare the shortest path of spanner ``h`` between the ends of a
    critical path with the critical path itself.

    same-sequence: the spanner path uses the same subdivided edges, so it
      can only lose inside copies.  Each copy whose connector lost an edge
      costs at least 1 (the connector is a unique shortest path there), or
      2 in the bipartite biclique mode.
    detour: it uses different subdivided edges.  Writing q, k for the
      numbers of subdivided edges on the two paths and I* for the inner
      edges of the critical path, the error is at least (q - k) psi - I*,
      and at least 1 when the lifted path is a unique shortest path of the
      host graph (checked here).
    """
    p = ob.paths[index]
    s, t = p.nodes[0], p.nodes[-1]
    prof = bfs_profile(h, s, targets=[t])
    k_star = len(p.copies) - 1
    missing = sum(1 for o, i, j in p.connectors if any(not h.has_edge(a, b) for a, b in zip(p.nodes[i:j], p.nodes[i + 1 : j + 1])))
    if t not in prof.dist:
        return DetourCertificate(index, "disconnected", INF, 0, True, missing, 0, k_star)
    route = bfs_path(h, s, t, prof)
    diff = len(route) - len(p.nodes)
    chain_of = _chain_index(ob)
    seq = outer_sequence(ob, route, chain_of)
    star = outer_sequence(ob, p.nodes, chain_of)
    if seq == star:
        per = 2 if ob.mode == "emulator" else 1
        bound = per * missing
        mode = "same-sequence"
    else:
        inner_star = len(p.nodes) - 1 - k_star * ob.psi
        floor = 1 if check_usp(ob.graph, p.nodes).ok else 0
        bound = max(floor, (len(seq) - k_star) * ob.psi - inner_star)
        mode = "detour"
    return DetourCertificate(index, mode, diff, bound, diff >= bound, missing, len(seq), k_star)
