"""Undirected graph with dense integer ids, node labels and edge kinds."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

# edge kinds
OUTER = "outer"
SUBDIV = "subdiv"
CLIQUE = "clique"
GRID = "grid"
AXIS = "axis"
TREE = "tree"
EMULATOR = "emulator"

EDGE_KINDS = (OUTER, SUBDIV, CLIQUE, GRID, AXIS, TREE, EMULATOR)


def ekey(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph.

    Nodes are ``0..n-1``.  ``labels[i]`` is a tuple whose first entry names
    the node kind; the remaining entries are integers or short strings.
    Adjacency lists are kept sorted so every traversal is deterministic.
    """

    __slots__ = ("adj", "kind", "labels")

    def __init__(
        self,
        labels: Sequence[tuple],
        edges: Iterable[tuple[int, int, str]] = (),
    ):
        self.labels: list[tuple] = list(labels)
        n = len(self.labels)
        self.kind: dict[tuple[int, int], str] = {}
        for u, v, k in edges:
            if u == v:
                raise ValueError(f"self loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} nodes")
            self.kind[ekey(u, v)] = k
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.kind:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for lst in nbrs:
            lst.sort()
        self.adj: list[list[int]] = nbrs

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.kind)

    def edges(self) -> list[tuple[int, int, str]]:
        return [(u, v, self.kind[(u, v)]) for u, v in sorted(self.kind)]

    def has_edge(self, u: int, v: int) -> bool:
        return ekey(u, v) in self.kind

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> Graph:
        gone = {ekey(u, v) for u, v in drop}
        return Graph(self.labels, ((u, v, k) for (u, v), k in self.kind.items() if (u, v) not in gone))

    def with_edges(self, extra: Iterable[tuple[int, int, str]]) -> Graph:
        es = dict(self.kind)
        for u, v, k in extra:
            es.setdefault(ekey(u, v), k)
        return Graph(self.labels, ((u, v, k) for (u, v), k in es.items()))

    def edge_subgraph(self, keep: Iterable[tuple[int, int]]) -> Graph:
        """Same node set, only the given edges (kinds copied)."""
        keys = {ekey(u, v) for u, v in keep}
        missing = keys - self.kind.keys()
        if missing:
            raise ValueError(f"{len(missing)} edges not in graph, e.g. {min(missing)}")
        return Graph(self.labels, ((u, v, self.kind[(u, v)]) for u, v in keys))

    def kind_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for k in self.kind.values():
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.labels == other.labels and self.kind == other.kind

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def path_edges(path: Sequence[int]) -> list[tuple[int, int]]:
    return [ekey(a, b) for a, b in zip(path, path[1:])]
