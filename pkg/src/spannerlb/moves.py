"""Move decomposition of paths in a spanner-mode obstacle product.

A path between two source nodes of different copies is cut at every node
that is a source of a copy other than the one the current piece started
in.  Each piece (a move) gets the outer displacement m between the two
copies and its exact share of the path length along d* = (2x, 2y, -1),
the paraboloid normal of the reference path.  The excesses
Delta = |move| - mu * d telescope to |path| - |reference| exactly.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .convex_sets import IntVec3, witness_direction
from .graph import ekey
from .inner_graphs import ScaleProfile, build_sourcewise
from .obstacle_product import ObstacleGraph, replace_with_sourcewise
from .outer_graph import build_outer_striped

FORWARD_SAME = "forward-same-stripe"
FORWARD_SINK = "forward-diff-sink-stripe"
FORWARD_SOURCE = "forward-diff-source-stripe"
BACKWARD = "backward"
ZIGZAG = "zigzag"
INTRA = "intra-copy"
OTHER = "other"
MOVE_CLASSES = (FORWARD_SAME, FORWARD_SINK, FORWARD_SOURCE, BACKWARD, ZIGZAG, INTRA, OTHER)


@dataclass(frozen=True)
class StarPath:
    """A critical path cut to run between source nodes of two copies,
    over an even number of outer edges."""

    index: int
    nodes: tuple[int, ...]
    stripe: int
    w1: IntVec3
    w2: IntVec3
    start_copy: int
    end_copy: int

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def direction(self) -> IntVec3:
        return witness_direction(self.w1 + self.w2)


def truncated_critical_path(ob: ObstacleGraph, index: int) -> StarPath:
    """Lifted critical path ``index`` from the entry source of its third
    copy to its final source node.  Needs at least four outer edges."""
    p = ob.paths[index]
    op = ob.outer.paths[p.outer]
    if len(p.copies) < 5:
        raise ValueError(f"path {index} has {len(p.copies) - 1} outer edges, need >= 4")
    start = p.connectors[1][1]
    return StarPath(index, p.nodes[start:], op.stripe or 0, op.w1, op.w2, p.copies[2], p.copies[-1])


@dataclass
class Move:
    start: int  # index into the path
    end: int
    src_copy: int
    dst_copy: int
    vector: IntVec3
    length: int
    cls: str
    d_num: int  # <m, d*>
    mu_d: Fraction
    delta: Fraction
    traversals: tuple[tuple[tuple[int, int], bool], ...] = ()  # (outer edge, forward?)


@dataclass
class MoveDecomposition:
    moves: list[Move]
    path_length: int
    star_length: int
    direction: IntVec3
    nu_num: int  # <coord(t) - coord(s), d*>
    stripe: int
    psi: int
    lam: int | None  # connector length inside a copy

    @property
    def total_delta(self) -> Fraction:
        return sum((m.delta for m in self.moves), Fraction(0))

    @property
    def identity_holds(self) -> bool:
        return self.total_delta == self.path_length - self.star_length

    def class_counts(self) -> dict[str, int]:
        return dict(sorted(Counter(m.cls for m in self.moves).items()))


def _chain_edges(ob: ObstacleGraph) -> dict[tuple[int, int], tuple[tuple[int, int], int]]:
    """chain edge -> (outer edge, node nearer the tail)."""
    out = {}
    for key, seq in ob.chains.items():
        for a, b in zip(seq, seq[1:]):
            out[ekey(a, b)] = (key, a)
    return out


def move_decompose(ob: ObstacleGraph, path: Sequence[int], star: StarPath, chain_edges=None) -> MoveDecomposition:
    """Split ``path`` (from star's first node to its last) into moves."""
    if path[0] != star.nodes[0] or path[-1] != star.nodes[-1]:
        raise ValueError("path and reference must share both endpoints")
    if len(set(path)) != len(path):
        raise ValueError("path is not simple")
    g = ob.graph
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"({a},{b}) is not an edge")
    if ob.role(path[0]) != "source":
        raise ValueError("path must start at a source node")
    chain_edges = _chain_edges(ob) if chain_edges is None else chain_edges
    og = ob.outer
    dstar = star.direction
    coord = lambda o: og.coord(o)[1]
    nu_num = (coord(star.end_copy) - coord(star.start_copy)).dot(dstar)
    if nu_num <= 0:
        raise ValueError("reference path has no progress along d*")
    mu = Fraction(star.length, nu_num)
    lam = None
    if hasattr(ob.inner, "path_length"):
        lam = ob.inner.path_length

    cuts = [0]
    cur = ob.node_copy[path[0]]
    for i in range(1, len(path)):
        v = path[i]
        if ob.role(v) == "source" and ob.node_copy[v] != cur:
            cuts.append(i)
            cur = ob.node_copy[v]
    if cuts[-1] != len(path) - 1:
        cuts.append(len(path) - 1)

    moves = []
    for a, b in zip(cuts, cuts[1:]):
        src, dst = ob.node_copy[path[a]], ob.node_copy[path[b]]
        m = coord(dst) - coord(src)
        trav: list[tuple[tuple[int, int], bool]] = []
        for x, y in zip(path[a:b], path[a + 1 : b + 1]):
            hit = chain_edges.get(ekey(x, y))
            if hit is None:
                continue
            key, near_tail = hit
            fwd = x == near_tail
            if not trav or trav[-1][0] != key:
                trav.append((key, fwd))
        cls = _classify(ob, path[a], src == dst, trav, star.stripe)
        dn = m.dot(dstar)
        mud = mu * dn
        moves.append(Move(a, b, src, dst, m, b - a, cls, dn, mud, (b - a) - mud, tuple(trav)))
    return MoveDecomposition(moves, len(path) - 1, star.length, dstar, nu_num, star.stripe, ob.psi, lam)


def _classify(ob: ObstacleGraph, start: int, same_copy: bool, trav, stripe: int) -> str:
    if same_copy and not trav:
        return INTRA
    dirs = [f for _, f in trav]
    if dirs == [True]:
        (key, _), = trav
        sink_group = ob.group(ob.chains[key][0])
        if sink_group != stripe:
            return FORWARD_SINK
        if ob.group(start) != stripe:
            return FORWARD_SOURCE
        return FORWARD_SAME
    if dirs == [False]:
        return BACKWARD
    if dirs == [False, True]:
        return ZIGZAG
    return OTHER


@dataclass
class MoveAudit:
    ok: bool
    counts: dict[str, int]
    backward_checked: int
    pairs_checked: int
    source_moves_checked: int
    violations: list[str] = field(default_factory=list)


def delta_bound_audit(dec: MoveDecomposition) -> MoveAudit:
    """Exact checks of the per-class excess bounds.

    * backward moves have <m, d*> <= 0, hence Delta >= psi
    * two consecutive same-stripe forward moves have Delta sum >= 0
    * a forward move from a source of another stripe directly follows a
      backward, zigzag or other-sink-stripe forward move
    * the excesses telescope to |path| - |reference|
    """
    bad = []
    nb = npairs = nsrc = 0
    mv = dec.moves
    for i, m in enumerate(mv):
        if m.cls == BACKWARD:
            nb += 1
            if m.d_num > 0:
                bad.append(f"move {i}: backward with <m,d*> = {m.d_num} > 0")
            if m.delta < dec.psi:
                bad.append(f"move {i}: backward with Delta = {m.delta} < psi = {dec.psi}")
        if i and m.cls == FORWARD_SAME and mv[i - 1].cls == FORWARD_SAME:
            npairs += 1
            if mv[i - 1].delta + m.delta < 0:
                bad.append(f"moves {i - 1},{i}: same-stripe pair Delta sum {mv[i - 1].delta + m.delta} < 0")
        if m.cls == FORWARD_SOURCE:
            nsrc += 1
            prev = mv[i - 1].cls if i else None
            if prev not in (BACKWARD, ZIGZAG, FORWARD_SINK):
                bad.append(f"move {i}: other-source-stripe forward move after {prev}")
    if not dec.identity_holds:
        bad.append(f"sum of Delta {dec.total_delta} != {dec.path_length - dec.star_length}")
    return MoveAudit(not bad, dec.class_counts(), nb, npairs, nsrc, bad)


# -- path samplers -----------------------------------------------------------


def _distances_to(adj, t, radius):
    dist = {t: 0}
    dq = deque([t])
    while dq:
        u = dq.popleft()
        du = dist[u]
        if du == radius:
            continue
        for v in adj[u]:
            if v not in dist:
                dist[v] = du + 1
                dq.append(v)
    return dist


def _random_simple_path(adj, s, t, budget, dist, rng, max_expand):
    """Depth-first search with shuffled neighbours, pruned by the distance
    to t; returns the first simple s-t path of length <= budget."""
    path = [s]
    on_path = {s}
    stack = [iter(rng.sample(adj[s], len(adj[s])))]
    expand = 0
    while stack:
        if path[-1] == t:
            return path
        nxt = None
        for v in stack[-1]:
            if v in on_path:
                continue
            dv = dist.get(v)
            if dv is None or len(path) + dv > budget:
                continue
            nxt = v
            break
        if nxt is None:
            stack.pop()
            on_path.discard(path.pop())
            continue
        expand += 1
        if expand > max_expand:
            return None
        path.append(nxt)
        on_path.add(nxt)
        nb = adj[nxt]
        stack.append(iter(rng.sample(nb, len(nb))))
    return None


def sample_alternate_paths(
    ob: ObstacleGraph,
    star: StarPath,
    count: int,
    seed: int = 0,
    slack: int | None = None,
    max_tries: int | None = None,
    max_expand: int = 20000,
) -> list[list[int]]:
    """Seeded, pairwise distinct simple paths between the reference
    endpoints, other than the reference itself, of length at most
    |reference| + slack (default 16 psi).

    Each try is a randomized depth-first search pruned by exact distance
    to the target, so it never wanders off.  Fewer than ``count`` paths
    come back when the bounded path set is small.
    """
    rng = random.Random(seed)
    adj = ob.graph.adj
    s, t = star.nodes[0], star.nodes[-1]
    budget = star.length + (16 * ob.psi if slack is None else slack)
    dist = _distances_to(adj, t, budget)
    seen = {tuple(star.nodes)}
    out: list[list[int]] = []
    limit = max_tries if max_tries is not None else 20 * count
    for _ in range(limit):
        if len(out) >= count:
            break
        p = _random_simple_path(adj, s, t, budget + 1, dist, rng, max_expand)
        if p is None or tuple(p) in seen:
            continue
        seen.add(tuple(p))
        out.append(p)
    return out


def _bfs_to_any(adj, s, targets, avoid, max_depth=None):
    """Shortest path from s to the nearest node of ``targets``, never
    entering ``avoid``; ties go to the smallest node id."""
    if s in targets:
        return [s]
    prev = {s: None}
    frontier = [s]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        depth += 1
        nxt = []
        hit = None
        for u in frontier:
            for v in adj[u]:
                if v in prev or v in avoid:
                    continue
                prev[v] = u
                if v in targets and (hit is None or v < hit):
                    hit = v
                nxt.append(v)
        if hit is not None:
            out = [hit]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])
            return out[::-1]
        frontier = nxt
    return None


def backward_detours(ob: ObstacleGraph, star: StarPath, limit: int | None = None) -> list[list[int]]:
    """Simple paths between the reference endpoints that walk one foreign
    subdivided edge from head to tail.

    For each subdivided edge whose head source lies in a copy the
    reference visits (edges of the reference excluded): leave the
    reference inside that copy, reach the head without touching other
    reference nodes, walk the edge backwards, then take a shortest route
    back to a later reference node and follow the reference to the end.
    """
    adj = ob.graph.adj
    ref = list(star.nodes)
    pos = {v: i for i, v in enumerate(ref)}
    own = {ekey(a, b) for a, b in zip(ref, ref[1:])}
    by_copy: dict[int, list[int]] = {}
    for i, v in enumerate(ref):
        c = ob.node_copy[v]
        if c >= 0:
            by_copy.setdefault(c, []).append(i)
    out: list[list[int]] = []
    for key in sorted(ob.chains):
        if limit is not None and len(out) >= limit:
            break
        idx = by_copy.get(key[1])
        if not idx:
            continue
        seq = ob.chains[key]
        if ekey(seq[0], seq[1]) in own or seq[-1] in pos:
            continue
        head, tail = seq[-1], seq[0]
        # leave the reference at its first node in the head's copy
        i = idx[0]
        ref_set = set(ref)
        into = _bfs_to_any(adj, ref[i], {head}, (ref_set - {ref[i]}) | set(seq[:-1]))
        if into is None:
            continue
        used = set(ref[: i + 1]) | set(into) | set(seq)
        later = set(ref[i + 1 :]) - used
        back = _bfs_to_any(adj, tail, later, used - {tail})
        if back is None:
            continue
        j = pos[back[-1]]
        p = ref[:i] + into + list(seq[::-1][1:]) + back[1:] + ref[j + 1 :]
        if len(set(p)) == len(p):
            out.append(p)
    return out


def rank_reference_paths(ob: ObstacleGraph, min_edges: int = 4) -> list[int]:
    """Indices of lifted paths with at least ``min_edges`` outer edges,
    busiest first: the score is how many foreign subdivided edges enter
    the copies the path visits.  Ties go to the smaller index."""
    indeg = Counter(head for _, head in ob.chains)
    scored = []
    for i, p in enumerate(ob.paths):
        if len(p.copies) - 1 < min_edges:
            continue
        scored.append((-sum(indeg[c] - 1 for c in p.copies[2:]), i))
    return [i for _, i in sorted(scored)]


@dataclass
class MoveExperiment:
    references: list[int]
    alternates: int
    identity_failures: int
    audit_failures: int
    detours: int
    backward_moves: int
    backward_sign_failures: int
    class_counts: dict[str, int]
    min_backward_delta: Fraction | None
    violations: list[str] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)  # one per decomposed path

    @property
    def ok(self) -> bool:
        return not (self.identity_failures or self.audit_failures or self.backward_sign_failures)


def move_experiment(
    ob: ObstacleGraph,
    references: int = 4,
    per_reference: int = 50,
    seed: int = 0,
    slack: int | None = None,
) -> MoveExperiment:
    """Sample alternates and construct backward detours around the busiest
    reference paths, decompose each into moves and audit them."""
    refs = rank_reference_paths(ob)[:references]
    chains = _chain_edges(ob)
    counts: Counter = Counter()
    alts = id_bad = audit_bad = detours = back = sign_bad = 0
    min_back = None
    notes: list[str] = []
    records: list[dict] = []
    for k, idx in enumerate(refs):
        star = truncated_critical_path(ob, idx)
        sampled = sample_alternate_paths(ob, star, per_reference, seed=seed + k, slack=slack)
        built = backward_detours(ob, star)
        alts += len(sampled)
        detours += len(built)
        for tag, group in (("alt", sampled), ("detour", built)):
            for p in group:
                dec = move_decompose(ob, p, star, chains)
                counts.update(dec.class_counts())
                if not dec.identity_holds:
                    id_bad += 1
                    notes.append(f"ref {idx} {tag}: sum delta {dec.total_delta} != {dec.path_length - dec.star_length}")
                audit = delta_bound_audit(dec)
                if not audit.ok:
                    audit_bad += 1
                    notes.extend(f"ref {idx} {tag}: {v}" for v in audit.violations)
                records.append({
                    "reference": idx,
                    "kind": tag,
                    "length": dec.path_length,
                    "reference_length": dec.star_length,
                    "sum_delta": dec.total_delta,
                    "identity": dec.identity_holds,
                    "audit": audit.ok,
                    "moves": [[m.cls, list(m.vector), m.length, m.d_num, m.delta] for m in dec.moves],
                })
                for m in dec.moves:
                    if m.cls != BACKWARD:
                        continue
                    if tag == "detour":
                        back += 1
                        sign_bad += m.d_num > 0
                    min_back = m.delta if min_back is None else min(min_back, m.delta)
    return MoveExperiment(
        refs, alts, id_bad, audit_bad, detours, back, sign_bad, dict(sorted(counts.items())), min_back, notes, records
    )


def build_move_instance(
    a: int = 20,
    r: int = 8,
    c: int = 2,
    alpha: Fraction = Fraction(1, 8),
    zone=((1, 6), (1, 6), (1, 8)),
    inner_a: int = 64,
    inner_c: int = 4,
    tree_base: int | str = 2,
    psi: int = 6,
) -> ObstacleGraph:
    """Striped spanner-mode product dense enough to offer detours: the
    inner copies keep their whole template, so a path may leave the
    reference inside any copy it visits."""
    og = build_outer_striped(a, r, c, "relaxed", alpha=alpha, start_zone=zone)
    sw = build_sourcewise(inner_a, inner_c, ScaleProfile(tree_base=tree_base))
    return replace_with_sourcewise(og, sw, psi, prune_inner=False)
