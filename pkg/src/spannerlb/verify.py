"""Exact shortest-path checks.

Path counts are Python ints, so uniqueness is never decided modulo
anything.  Every failing check carries a concrete witness.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .graph import Graph, ekey

Adjacency = Sequence[Sequence[int]]


@dataclass
class DistanceProfile:
    source: int
    dist: dict[int, int]
    count: dict[int, int]

    def pred(self, adj: Adjacency, v: int) -> list[int]:
        """Shortest-path DAG predecessors of v (unweighted profile)."""
        d = self.dist.get(v)
        if d is None or d == 0:
            return []
        return [u for u in adj[v] if self.dist.get(u) == d - 1]


def _adj(g: Graph | Adjacency) -> Adjacency:
    return g.adj if isinstance(g, Graph) else g


def bfs_profile(
    g: Graph | Adjacency,
    source: int,
    max_depth: int | None = None,
    targets: Iterable[int] | None = None,
) -> DistanceProfile:
    """BFS distances and exact shortest-path counts from ``source``.

    Stops after ``max_depth`` levels, or once every node in ``targets``
    has been finalised (counts are final when a level is complete).
    """
    adj = _adj(g)
    dist = {source: 0}
    count = {source: 1}
    frontier = [source]
    pending = set(targets) if targets is not None else None
    if pending is not None:
        pending.discard(source)
    depth = 0
    while frontier:
        if pending is not None and not pending:
            break
        if max_depth is not None and depth >= max_depth:
            break
        depth += 1
        nxt = []
        for u in frontier:
            cu = count[u]
            for v in adj[u]:
                dv = dist.get(v)
                if dv is None:
                    dist[v] = depth
                    count[v] = cu
                    nxt.append(v)
                elif dv == depth:
                    count[v] += cu
        if pending is not None:
            pending.difference_update(nxt)
        frontier = nxt
    return DistanceProfile(source, dist, count)


def dijkstra_profile(
    wadj: Sequence[Sequence[tuple[int, int]]], source: int, cutoff: int | None = None
) -> DistanceProfile:
    """Weighted distances with exact multiplicity counts.

    ``wadj[u]`` lists ``(v, w)`` with positive integer weights.
    """
    dist = {source: 0}
    count = {source: 1}
    done = set()
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        if cutoff is not None and d > cutoff:
            break
        done.add(u)
        cu = count[u]
        for v, w in wadj[u]:
            nd = d + w
            dv = dist.get(v)
            if dv is None or nd < dv:
                dist[v] = nd
                count[v] = cu
                heapq.heappush(heap, (nd, v))
            elif nd == dv and v not in done:
                count[v] += cu
    for v in list(dist):
        if v not in done:
            del dist[v]
            del count[v]
    return DistanceProfile(source, dist, count)


def bfs_path(g: Graph | Adjacency, s: int, t: int, prof: DistanceProfile | None = None) -> list[int] | None:
    """One shortest s-t path, always taking the smallest-id predecessor."""
    adj = _adj(g)
    if prof is None:
        prof = bfs_profile(adj, s, targets=[t])
    if t not in prof.dist:
        return None
    return _backtrack(adj, prof, t)


def _backtrack(adj: Adjacency, prof: DistanceProfile, v: int) -> list[int]:
    out = [v]
    while prof.dist[v]:
        v = min(prof.pred(adj, v))
        out.append(v)
    out.reverse()
    return out


# -- unique shortest paths ---------------------------------------------------


@dataclass
class UspResult:
    ok: bool
    length: int
    dist: int | None
    count: int
    witness: list[int] | None = None

    @property
    def reason(self) -> str:
        if self.ok:
            return "unique shortest path"
        if self.dist is None:
            return "endpoints disconnected"
        if self.dist < self.length:
            return f"shorter path exists ({self.dist} < {self.length})"
        return f"{self.count} shortest paths"


def _usp_from_profile(adj: Adjacency, prof: DistanceProfile, path: Sequence[int]) -> UspResult:
    t = path[-1]
    length = len(path) - 1
    d = prof.dist.get(t)
    if d is None:
        return UspResult(False, length, None, 0)
    cnt = prof.count[t]
    if d == length and cnt == 1:
        return UspResult(True, length, d, 1)
    if d < length:
        return UspResult(False, length, d, cnt, _backtrack(adj, prof, t))
    # same length, several shortest paths: find where another one joins
    for i in range(length, 0, -1):
        for u in prof.pred(adj, path[i]):
            if u != path[i - 1]:
                return UspResult(False, length, d, cnt, _backtrack(adj, prof, u) + list(path[i:]))
    # path itself is not a walk in the graph
    return UspResult(False, length, d, cnt, _backtrack(adj, prof, t))


def check_usp(g: Graph | Adjacency, path: Sequence[int]) -> UspResult:
    """Pass iff ``path`` is a shortest path and the only one."""
    adj = _adj(g)
    if len(path) < 2:
        raise ValueError("path needs at least one edge")
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise ValueError(f"({a},{b}) is not an edge")
    prof = bfs_profile(adj, path[0], max_depth=len(path) - 1, targets=[path[-1]])
    return _usp_from_profile(adj, prof, path)


def check_usp_many(g: Graph | Adjacency, paths: Sequence[Sequence[int]]) -> list[UspResult]:
    """check_usp for a family, one bounded BFS per distinct start node."""
    adj = _adj(g)
    by_start: dict[int, list[int]] = defaultdict(list)
    for i, p in enumerate(paths):
        by_start[p[0]].append(i)
    out: list[UspResult | None] = [None] * len(paths)
    for s in sorted(by_start):
        idx = by_start[s]
        depth = max(len(paths[i]) - 1 for i in idx)
        prof = bfs_profile(adj, s, max_depth=depth, targets={paths[i][-1] for i in idx})
        for i in idx:
            out[i] = _usp_from_profile(adj, prof, paths[i])
    return out  # type: ignore[return-value]


# -- path family checks ------------------------------------------------------


@dataclass
class FamilyReport:
    ok: bool
    checked: int
    violations: list = field(default_factory=list)


def check_pairwise_intersections(paths: Sequence[Sequence[int]], limit: int = 2) -> FamilyReport:
    """Any two paths share at most ``limit`` nodes; with exactly two shared
    nodes (limit 2) those nodes must be consecutive on both paths.

    Violations are ``(i, j, shared_nodes)``.
    """
    on: dict[int, list[int]] = defaultdict(list)
    for i, p in enumerate(paths):
        for v in set(p):
            on[v].append(i)
    shared: dict[tuple[int, int], list[int]] = defaultdict(list)
    for v in sorted(on):
        ids = on[v]
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                shared[(ids[a], ids[b])].append(v)
    bad = []
    for (i, j), vs in sorted(shared.items()):
        if len(vs) > limit:
            bad.append((i, j, vs))
        elif len(vs) == 2:
            pi, pj = paths[i], paths[j]
            if abs(pi.index(vs[0]) - pi.index(vs[1])) != 1 or abs(pj.index(vs[0]) - pj.index(vs[1])) != 1:
                bad.append((i, j, vs))
    return FamilyReport(not bad, len(shared), bad)


def check_clique_edge_disjoint(
    path_edges: Sequence[Iterable[tuple[int, int]]],
) -> FamilyReport:
    """No edge appears in the designated edge set of two different paths.

    Violations are ``(edge, [path ids])``.
    """
    owner: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, es in enumerate(path_edges):
        for u, v in {ekey(*e) for e in es}:
            owner[(u, v)].append(i)
    bad = [(e, ids) for e, ids in sorted(owner.items()) if len(ids) > 1]
    return FamilyReport(not bad, len(owner), bad)


def check_edge_coverage(
    g: Graph, paths: Sequence[Sequence[int]], kinds: Iterable[str] | None = None
) -> FamilyReport:
    """Every edge (of the given kinds) lies on some path; every path edge exists.

    Violations are ``("uncovered", edge)`` or ``("missing", edge)``.
    """
    want = set(kinds) if kinds is not None else None
    used = set()
    bad: list = []
    for p in paths:
        for a, b in zip(p, p[1:]):
            e = ekey(a, b)
            used.add(e)
            if e not in g.kind:
                bad.append(("missing", e))
    for e, k in sorted(g.kind.items()):
        if (want is None or k in want) and e not in used:
            bad.append(("uncovered", e))
    return FamilyReport(not bad, g.m, bad)


def edge_multiplicity(paths: Sequence[Sequence[int]]) -> dict[tuple[int, int], int]:
    mult: dict[tuple[int, int], int] = defaultdict(int)
    for p in paths:
        for a, b in zip(p, p[1:]):
            mult[ekey(a, b)] += 1
    return dict(mult)


def weighted_adjacency(n: int, weights: Mapping[tuple[int, int], int]) -> list[list[tuple[int, int]]]:
    wadj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), w in sorted(weights.items()):
        if w <= 0:
            raise ValueError(f"non-positive weight on ({u},{v})")
        wadj[u].append((v, w))
        wadj[v].append((u, w))
    return wadj
