"""Obstacle product: subdivide every outer edge and put an inner graph at
every outer node.

A lifted critical path runs along the subdivided outer edges and crosses
each intermediate copy through a single connector: one clique edge in
the biclique (emulator) mode, one inner critical path in the sourcewise
(spanner) mode.  Inner edges used by no lifted path are pruned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import SUBDIV, Graph, ekey
from .inner_graphs import (
    DESK,
    BicliqueInner,
    DegenerateProfile,
    ScaleProfile,
    SourcewiseInner,
    build_biclique,
    build_sourcewise,
)
from .outer_graph import SIDES, OuterGraph

EMULATOR = "emulator"
SPANNER = "spanner"


@dataclass(frozen=True)
class ObstaclePath:
    outer: int  # index into the outer graph's paths
    nodes: tuple[int, ...]
    copies: tuple[int, ...]  # outer node ids v_0..v_k
    # (outer node, first position, last position) of each connector in nodes
    connectors: tuple[tuple[int, int, int], ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def connector_edges(self) -> list[tuple[int, int]]:
        out = []
        for _, i, j in self.connectors:
            out.extend(ekey(a, b) for a, b in zip(self.nodes[i:j], self.nodes[i + 1 : j + 1]))
        return out


@dataclass
class ObstacleGraph:
    mode: str
    outer: OuterGraph
    inner: BicliqueInner | SourcewiseInner
    psi: int
    graph: Graph
    paths: list[ObstaclePath]
    # (outer node, inner node) -> id, for the copy nodes that are materialised
    copy_ids: dict[tuple[int, int], int]
    # (tail, head) outer edge -> node ids from the tail attachment to the head attachment
    chains: dict[tuple[int, int], tuple[int, ...]]
    node_copy: list[int] = field(default_factory=list)  # outer id of a copy node, -1 for subdivision nodes

    def copy_node(self, outer_id: int, local: int) -> int:
        return self.copy_ids[(outer_id, local)]

    def role(self, v: int) -> str:
        lab = self.graph.labels[v]
        return {"S": "source", "T": "sink"}.get(lab[3], "inner") if lab[0] == "inner" else "subdiv"

    def group(self, v: int) -> int:
        lab = self.graph.labels[v]
        return lab[4] if lab[0] == "inner" else 0

    @property
    def attach_roles(self) -> tuple[str, str]:
        return ("sink", "source")

    def clique_edge_sets(self) -> list[list[tuple[int, int]]]:
        return [p.connector_edges() for p in self.paths]

    def stats(self) -> ObstacleStats:
        og = self.outer
        n_inner = self.inner.graph.n
        formula = (self.psi - 1) * og.graph.m + n_inner * og.graph.n
        return ObstacleStats(
            mode=self.mode,
            psi=self.psi,
            nodes=self.graph.n,
            nodes_formula=formula,
            omitted_copy_nodes=formula - self.graph.n,
            edges=self.graph.m,
            edges_by_kind=self.graph.kind_counts(),
            paths=len(self.paths),
            outer_edges=og.graph.m,
            inner_nodes=n_inner,
            outer_nodes=og.graph.n,
        )


@dataclass
class ObstacleStats:
    mode: str
    psi: int
    nodes: int
    nodes_formula: int  # (psi-1)|E_O| + |V_I| |V_O|
    omitted_copy_nodes: int  # copy nodes no lifted path touches
    edges: int
    edges_by_kind: dict[str, int]
    paths: int
    outer_edges: int
    inner_nodes: int
    outer_nodes: int


# -- subdivision on its own --------------------------------------------------


@dataclass
class Subdivided:
    graph: Graph
    chains: dict[tuple[int, int], tuple[int, ...]]


def subdivide(og: OuterGraph, psi: int) -> Subdivided:
    """Replace every outer edge by a path of ``psi`` SUBDIV edges."""
    _check_psi(psi)
    labels = list(og.graph.labels)
    edges = []
    chains = {}
    for u, v, _ in og.graph.edges():
        t, h = og.oriented(u, v)
        seq = [t]
        for i in range(1, psi):
            labels.append(("sub", t, h, i))
            seq.append(len(labels) - 1)
        seq.append(h)
        chains[(t, h)] = tuple(seq)
        edges.extend((a, b, SUBDIV) for a, b in zip(seq, seq[1:]))
    return Subdivided(Graph(labels, edges), chains)


def _check_psi(psi: int) -> None:
    if not isinstance(psi, int) or psi < 1:
        raise ValueError(f"psi must be an int >= 1, got {psi!r}")


# -- product -----------------------------------------------------------------


def _product(og: OuterGraph, inner, psi: int, mode: str, attach, connector, prune_inner: bool = True) -> ObstacleGraph:
    _check_psi(psi)
    # pass 1: everything in terms of (outer node, inner node) keys
    oriented = []
    for u, v, _ in og.graph.edges():
        t, h = og.oriented(u, v)
        lt, lh = attach(og.edge_vector(t, h))
        oriented.append((t, h, lt, lh))
    needed: set[tuple[int, int]] = set()
    for t, h, lt, lh in oriented:
        needed.add((t, lt))
        needed.add((h, lh))
    lifted = []
    for p in og.paths:
        vs = p.nodes
        locals_ = []
        for i in range(1, len(vs) - 1):
            o = vs[i]
            lin = attach(og.edge_vector(vs[i - 1], o))[1]
            lout = attach(og.edge_vector(o, vs[i + 1]))[0]
            local = connector(lin, lout)
            needed.update((o, x) for x in local)
            locals_.append(local)
        lifted.append(locals_)
    full = [x for x in range(inner.graph.n) if inner.graph.adj[x]]
    if not prune_inner:
        for o in {o for o, _ in needed}:
            needed.update((o, x) for x in full)

    # copy nodes first, ordered by (outer node, inner node); then subdivision nodes
    labels: list[tuple] = []
    node_copy: list[int] = []
    cid: dict[tuple[int, int], int] = {}
    for o, x in sorted(needed):
        cid[(o, x)] = len(labels)
        role = inner.role(x)
        labels.append(("inner", o, x, {"source": "S", "sink": "T"}.get(role, "-"), inner.group(x)))
        node_copy.append(o)

    chains: dict[tuple[int, int], tuple[int, ...]] = {}
    edges: list[tuple[int, int, str]] = []
    for t, h, lt, lh in oriented:
        seq = [cid[(t, lt)]]
        for i in range(1, psi):
            labels.append(("sub", t, h, i))
            node_copy.append(-1)
            seq.append(len(labels) - 1)
        seq.append(cid[(h, lh)])
        chains[(t, h)] = tuple(seq)
        edges.extend((a, b, SUBDIV) for a, b in zip(seq, seq[1:]))

    inner_kind = inner.graph.kind
    used_inner: dict[tuple[int, int], str] = {}
    paths = []
    for pi, (p, locals_) in enumerate(zip(og.paths, lifted)):
        vs = p.nodes
        nodes = list(chains[(vs[0], vs[1])])
        conns = []
        for i, local in enumerate(locals_, start=1):
            o = vs[i]
            start = len(nodes) - 1
            for a, b in zip(local, local[1:]):
                used_inner[ekey(cid[(o, a)], cid[(o, b)])] = inner_kind[ekey(a, b)]
            nodes.extend(cid[(o, x)] for x in local[1:])
            conns.append((o, start, len(nodes) - 1))
            nodes.extend(chains[(o, vs[i + 1])][1:])
        paths.append(ObstaclePath(pi, tuple(nodes), tuple(vs), tuple(conns)))

    if not prune_inner:
        for o in sorted({o for o, _ in cid}):
            for (a, b), k in inner_kind.items():
                used_inner.setdefault(ekey(cid[(o, a)], cid[(o, b)]), k)
    edges.extend((a, b, k) for (a, b), k in used_inner.items())
    g = Graph(labels, edges)
    return ObstacleGraph(mode, og, inner, psi, g, paths, cid, chains, node_copy)


def replace_with_biclique(
    og: OuterGraph, psi: int, inner_r: int | None = None, prune_inner: bool = True
) -> ObstacleGraph:
    """Emulator mode: K_{r,r} at every node.

    The i-th vector of W1 and the i-th vector of W2 both map to (x^i, y^i);
    an edge leaves its tail from y^i and enters its head at x^i.  With
    ``prune_inner=False`` every touched copy keeps its whole inner graph.
    """
    fam = og.family
    r = og.r if inner_r is None else inner_r
    if max(len(fam.w1), len(fam.w2)) > r:
        raise ValueError(f"K_{{{r},{r}}} too small for {len(fam.w1)} vectors")
    bic = build_biclique(r)
    i1 = {w: i for i, w in enumerate(fam.w1)}
    i2 = {w: i for i, w in enumerate(fam.w2)}

    def attach(vec):
        i = i1[vec] if vec in i1 else i2[vec]
        return bic.y(i), bic.x(i)

    return _product(og, bic, psi, EMULATOR, attach, lambda a, b: (a, b), prune_inner)


def replace_with_sourcewise(
    og: OuterGraph, inner: SourcewiseInner, psi: int, prune_inner: bool = True
) -> ObstacleGraph:
    """Spanner mode: the sourcewise preserver at every node.

    The j-th vector of stripe i (in W1 or W2) maps to (s^i_j, t^i_j); an edge
    leaves its tail from t^i_j and enters its head at s^i_j.  Inside a copy
    the connector is the inner critical path between the two.  With
    ``prune_inner=False`` every touched copy keeps the whole (pruned) inner
    graph instead of only the connectors.
    """
    fam = og.family
    if fam.stripes is None:
        raise ValueError("spanner mode needs a striped outer graph")
    c = fam.stripes.c
    if inner.b < c:
        raise ValueError(f"inner graph has {inner.b} groups, need >= c = {c}")
    pos: dict = {}
    for i in range(1, c + 1):
        m1, m2 = fam.stripe_members(i)
        need = max(len(m1), len(m2))
        if need > inner.nu:
            raise ValueError(f"stripe {i} has {need} vectors but groups have {inner.nu} sources")
        for j, w in enumerate(m1):
            pos[w] = (i, j)
        for j, w in enumerate(m2):
            pos[w] = (i, j)

    def attach(vec):
        i, j = pos[vec]
        return inner.sinks[i - 1][j], inner.sources[i - 1][j]

    pidx = inner.path_index()

    def connector(s, t):
        return inner.paths[pidx[(s, t)]].nodes

    return _product(og, inner, psi, SPANNER, attach, connector, prune_inner)


# -- parameter helpers -------------------------------------------------------


def psi_emulator_balance(a: int, r: int) -> int:
    """ceil(a / r)."""
    return max(1, -(-a // r))


def psi_spanner_balance(r: int, c: int, exponent: Fraction = Fraction(29, 3)) -> int:
    """ceil(r^3 / c^exponent), computed exactly; at least 1."""
    e = Fraction(exponent)
    p, q = e.numerator, e.denominator
    # smallest m >= 1 with m^q * c^p >= r^(3q)   (p may be negative)
    lhs_c = Fraction(c) ** p
    target = Fraction(r) ** (3 * q)
    m = max(1, math.floor(r**3 / c ** float(e)))
    while m > 1 and (m - 1) ** q * lhs_c >= target:
        m -= 1
    while m**q * lhs_c < target:
        m += 1
    return m


def suggest_inner_params(
    og: OuterGraph,
    profile: ScaleProfile = DESK,
    max_a: int = 4096,
    max_c: int = 64,
) -> tuple[int, int]:
    """Smallest (a', c') found whose sourcewise graph fits the striped outer
    graph: at least c groups and enough sources per group.

    Scans c' over perfect squares and a' over powers of two.
    """
    fam = og.family
    if fam.stripes is None:
        raise ValueError("needs a striped outer graph")
    c = fam.stripes.c
    need = max(max(len(m) for m in fam.stripe_members(i)) for i in range(1, c + 1))
    a2 = 16
    while a2 <= max_a:
        for root in range(2, math.isqrt(max_c) + 1):
            try:
                sw = build_sourcewise(a2, root * root, profile)
            except DegenerateProfile:
                continue
            if sw.b >= c and sw.nu >= need:
                return a2, root * root
        a2 *= 2
    raise ValueError("no fitting inner parameters in the scanned range")


def copy_label(og: OuterGraph, o: int) -> str:
    side, v = og.coord(o)
    return f"{SIDES[side]}{tuple(v)}"
