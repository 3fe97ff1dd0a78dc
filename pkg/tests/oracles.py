"""Brute-force references used by the tests, independent of the package."""

from __future__ import annotations

import itertools


def adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def simple_paths(adj, s, t):
    """Every simple s-t path, by exhaustive DFS."""
    out = []
    path = [s]

    def go(u):
        if u == t:
            out.append(list(path))
            return
        for v in sorted(adj[u]):
            if v not in path:
                path.append(v)
                go(v)
                path.pop()

    go(s)
    return out


def shortest_by_enumeration(adj, s, t):
    """(distance, number of shortest paths, the shortest paths) or (None, 0, [])."""
    ps = simple_paths(adj, s, t)
    if not ps:
        return None, 0, []
    d = min(len(p) - 1 for p in ps)
    best = [p for p in ps if len(p) - 1 == d]
    return d, len(best), best


def floyd(n, edges):
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in edges:
        d[u][v] = d[v][u] = 1
    for k, i, j in itertools.product(range(n), repeat=3):
        d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    return d
