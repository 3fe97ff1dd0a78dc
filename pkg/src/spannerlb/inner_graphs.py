"""Inner graphs placed at every outer node.

``build_biclique`` gives the K_{r,r} gadget used for emulator lower
bounds.  ``build_sourcewise`` gives the 2D sourcewise distance preserver:
a lattice with parabola steps (w, w^2), bands of start points inside thin
rectangles, and balanced binary trees that merge each band factor into a
single source or sink.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import AXIS, CLIQUE, GRID, TREE, Graph, ekey
from .verify import bfs_profile, check_usp_many

# -- biclique ----------------------------------------------------------------


@dataclass
class BicliqueInner:
    """K_{r,r}: nodes 0..r-1 are x^1..x^r, nodes r..2r-1 are y^1..y^r."""

    r: int
    graph: Graph

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        return self.r + i

    def role(self, v: int) -> str:
        # incoming subdivided paths land on x nodes, outgoing leave from y nodes
        return "source" if v < self.r else "sink"

    def group(self, v: int) -> int:
        return 0


def build_biclique(r: int) -> BicliqueInner:
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive int, got {r!r}")
    labels = [("bic", "x", i + 1) for i in range(r)] + [("bic", "y", i + 1) for i in range(r)]
    g = Graph(labels, ((i, r + j, CLIQUE) for i in range(r) for j in range(r)))
    return BicliqueInner(r, g)


# -- sourcewise preserver ----------------------------------------------------


class DegenerateProfile(ValueError):
    """A scale profile produced an empty construction stage."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"degenerate at stage '{stage}': {detail}")
        self.stage = stage


@dataclass(frozen=True)
class ScaleProfile:
    """Constant factors of the sourcewise construction.

    long side of each rectangle  = long_frac * a * sqrt(c)
    short side                   = short_frac * c
    seed square side             = band_frac * c
    rectangle corner             = (d, d), d = ceil(offset_frac * a)
    straight segment steps f     = ceil(shift_frac * a / c^(3/2))
    tree_base                    = int, or "auto" (smallest base that keeps
                                   trees from shortening lattice distances),
                                   or "sqrt" (ceil(sqrt(a) * c))
    """

    name: str = "desk"
    long_frac: Fraction = Fraction(1, 4)
    short_frac: Fraction = Fraction(1, 8)
    band_frac: Fraction = Fraction(1, 8)
    offset_frac: Fraction = Fraction(1, 4)
    shift_frac: Fraction = Fraction(1, 4)
    tree_base: int | str = "auto"


DESK = ScaleProfile()
LARGE = ScaleProfile("large", *(Fraction(1, 100),) * 5, tree_base="sqrt")


@dataclass(frozen=True)
class Band:
    vec: int  # index into vectors
    seed: tuple[int, int]
    sources: tuple[tuple[int, int], ...]  # s_1..s_{nu^2}, along the tangent
    sinks: tuple[tuple[int, int], ...]  # t_k = s_k + (f-1) w


@dataclass(frozen=True)
class InnerCriticalPath:
    band: int
    j: int  # source factor (1-based)
    jt: int  # sink factor (1-based)
    k: int  # band index of the straight segment (1-based)
    nodes: tuple[int, ...]


@dataclass
class SourcewiseInner:
    a: int
    c: int
    profile: ScaleProfile
    vectors: tuple[tuple[int, int], ...]
    width: int  # x extent
    height: int  # y extent
    d: int
    f: int
    beta: int
    nu: int
    depth: int
    bands: list[Band]
    graph: Graph  # pruned to the critical paths
    sources: list[list[int]]  # sources[i][j-1] = root of S tree (band i, factor j)
    sinks: list[list[int]]
    paths: list[InnerCriticalPath]
    tree_leaves: dict[tuple[str, int, int], tuple[int, ...]] = field(default_factory=dict)
    tree_edges: dict[tuple[str, int, int], tuple[tuple[int, int], ...]] = field(default_factory=dict)

    @property
    def b(self) -> int:
        return len(self.bands)

    @property
    def psi_tree(self) -> int:
        """Root-to-leaf length of every tree."""
        return self.beta * (2**self.depth - 1)

    @property
    def path_length(self) -> int:
        return (self.f - 1) + 2 * self.psi_tree

    def grid_id(self, x: int, y: int) -> int:
        return (x - 1) * self.height + (y - 1)

    @property
    def grid_nodes(self) -> int:
        return self.width * self.height

    def role(self, v: int) -> str:
        lab = self.graph.labels[v]
        if lab[0] == "root":
            return "source" if lab[1] == "S" else "sink"
        return "inner"

    def group(self, v: int) -> int:
        lab = self.graph.labels[v]
        return lab[2] if lab[0] == "root" else 0

    def path_index(self) -> dict[tuple[int, int], int]:
        """(source root, sink root) -> index into paths."""
        return {(p.nodes[0], p.nodes[-1]): i for i, p in enumerate(self.paths)}

    def unpruned(self) -> Graph:
        """Lattice with W steps and unit axis edges, plus all trees."""
        return _assemble(self, with_axis=True, with_trees=True)

    def lattice(self) -> Graph:
        """Lattice with W steps and unit axis edges, no trees."""
        return _assemble(self, with_axis=True, with_trees=False)


def _ceil_sqrt_scaled(num: Fraction) -> int:
    """Smallest integer f >= 0 with f^2 >= num (num >= 0)."""
    f = math.isqrt(num.numerator // num.denominator)
    while f * f < num:
        f += 1
    return f


class _Rect:
    """Lattice membership in a rotated rectangle, exact.

    Sides along t = (1, 2w) (length L) and n = (2w, -1) (length S) from
    corner o.  With N = |t| = |n|, p is inside iff
    0 <= <p-o, t> <= L N and 0 <= <p-o, n> <= S N; squared on the right.
    """

    def __init__(self, w: int, o: tuple[int, int], L2: Fraction, S2: Fraction):
        self.t = (1, 2 * w)
        self.nrm = (2 * w, -1)
        self.N2 = 1 + 4 * w * w
        self.o = o
        self.L2, self.S2 = L2, S2

    def __contains__(self, p: tuple[int, int]) -> bool:
        qx, qy = p[0] - self.o[0], p[1] - self.o[1]
        a = qx * self.t[0] + qy * self.t[1]
        b = qx * self.nrm[0] + qy * self.nrm[1]
        return a >= 0 and b >= 0 and a * a <= self.L2 * self.N2 and b * b <= self.S2 * self.N2

    def lattice_points(self) -> list[tuple[int, int]]:
        L, S = math.sqrt(self.L2), math.sqrt(self.S2)
        N = math.sqrt(self.N2)
        cs = [(0.0, 0.0), (L * self.t[0] / N, L * self.t[1] / N), (S * self.nrm[0] / N, S * self.nrm[1] / N)]
        cs.append((cs[1][0] + cs[2][0], cs[1][1] + cs[2][1]))
        x0 = math.floor(min(c[0] for c in cs)) - 1 + self.o[0]
        x1 = math.ceil(max(c[0] for c in cs)) + 1 + self.o[0]
        y0 = math.floor(min(c[1] for c in cs)) - 1 + self.o[1]
        y1 = math.ceil(max(c[1] for c in cs)) + 1 + self.o[1]
        return [(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1) if (x, y) in self]


def sourcewise_vectors(c: int) -> tuple[tuple[int, int], ...]:
    return tuple((w, w * w) for w in range(-(-c // 2), c + 1))


def build_sourcewise(a: int, c: int, profile: ScaleProfile = DESK) -> SourcewiseInner:
    """Build G_I(a, c) and its critical pairs, pruned to the critical paths."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"a must be a positive int, got {a!r}")
    if not isinstance(c, int) or c < 2:
        raise ValueError(f"c must be an int >= 2, got {c!r}")
    pf = profile
    width = math.isqrt(a * a // c)  # floor(a / sqrt c)
    height = math.isqrt(a * a * c)  # floor(a sqrt c)
    if width < 1 or height < 1:
        raise DegenerateProfile("grid", f"{width} x {height} lattice")
    vectors = sourcewise_vectors(c)
    d = max(1, math.ceil(pf.offset_frac * a))
    f = max(1, _ceil_sqrt_scaled(pf.shift_frac**2 * a * a / c**3))
    L2 = pf.long_frac**2 * a * a * c
    S2 = (pf.short_frac * c) ** 2
    B2 = (pf.band_frac * c) ** 2

    def inside(p):
        return 1 <= p[0] <= width and 1 <= p[1] <= height

    raw_bands = []
    for vi, (wx, wy) in enumerate(vectors):
        rect = _Rect(wx, (d, d), L2, S2)
        pts = rect.lattice_points()
        if not pts:
            raise DegenerateProfile("rectangle", f"no lattice points for w={wx}")
        seeds = [p for p in _Rect(wx, (d, d), B2, B2).lattice_points() if p in rect]
        if not seeds:
            raise DegenerateProfile("seeds", f"empty seed square for w={wx}")
        tx, ty = 1, 2 * wx
        seen_lines = set()
        for sd in sorted(seeds):
            # points of the rectangle on the line sd + k t
            line = sorted((p for p in pts if (p[0] - sd[0]) * ty == (p[1] - sd[1]) * tx), key=lambda p: p[0])
            key = line[0]
            if key in seen_lines:
                continue
            seen_lines.add(key)
            raw_bands.append((vi, sd, line))
    shortest = min(len(line) for _, _, line in raw_bands)
    nu = math.isqrt(shortest)
    if nu < 2:
        raise DegenerateProfile("bands", f"shortest band has {shortest} points, need >= 4")

    bands: list[Band] = []
    for vi, sd, line in raw_bands:
        wx, wy = vectors[vi]
        src = tuple(line[: nu * nu])
        snk = tuple((x + (f - 1) * wx, y + (f - 1) * wy) for x, y in src)
        for x, y in snk:
            if not inside((x, y)):
                raise DegenerateProfile("sinks", f"sink band for w={wx} leaves the {width}x{height} lattice")
        for x, y in src:
            if not inside((x, y)):
                raise DegenerateProfile("rectangle", f"rectangle for w={wx} leaves the lattice")
        bands.append(Band(vi, sd, src, snk))

    depth = max(1, (nu - 1).bit_length())  # ceil(log2 nu), at least one level
    if pf.tree_base == "auto":
        # leaves k apart in a factor are at most k*nu*(1+2c) apart in L1;
        # tree distance between them is at least 2*beta*k
        beta = -(-(nu * (1 + 2 * c)) // 2)
    elif pf.tree_base == "sqrt":
        beta = max(1, math.ceil(math.sqrt(a) * c))
    else:
        beta = int(pf.tree_base)
        if beta < 1:
            raise ValueError("tree_base must be >= 1")

    sw = SourcewiseInner(
        a, c, pf, vectors, width, height, d, f, beta, nu, depth, bands,
        Graph([]), [], [], [],
    )
    labels: list[tuple] = [("grid", x, y) for x in range(1, width + 1) for y in range(1, height + 1)]
    tree_edges: dict[tuple[str, int, int], list[tuple[int, int]]] = {}
    leaf_path: dict[tuple[str, int, int], list[list[int]]] = {}  # root->leaf node lists

    def new_node(lab):
        labels.append(lab)
        return len(labels) - 1

    def make_tree(side: str, bi: int, j: int, leaves: list[int]) -> int:
        key = (side, bi, j)
        root = new_node(("root", side, bi + 1, j))
        es: list[tuple[int, int]] = []
        chains: list[list[int]] = []
        seq = 0

        def chain(u: int, v: int, length: int) -> list[int]:
            nonlocal seq
            out = [u]
            for _ in range(length - 1):
                seq += 1
                out.append(new_node(("tnode", side, bi + 1, j, seq)))
            out.append(v)
            es.extend(zip(out, out[1:]))
            return out

        # internal nodes keyed by prefix (depth, value)
        internal: dict[tuple[int, int], list[int]] = {(0, 0): [root]}
        for lvl in range(1, depth + 1):
            seg = beta * 2 ** (depth - lvl)
            for prefix in sorted({k >> (depth - lvl) for k in range(nu)}):
                parent_path = internal[(lvl - 1, prefix >> 1)]
                if lvl == depth:
                    target = leaves[prefix]
                else:
                    seq += 1
                    target = new_node(("tnode", side, bi + 1, j, seq))
                internal[(lvl, prefix)] = parent_path + chain(parent_path[-1], target, seg)[1:]
        for k in range(nu):
            chains.append(internal[(depth, k)])
        tree_edges[key] = es
        leaf_path[key] = chains
        return root

    sources, sinks = [], []
    for bi, band in enumerate(bands):
        src_ids = [sw.grid_id(*p) for p in band.sources]
        snk_ids = [sw.grid_id(*p) for p in band.sinks]
        sources.append([make_tree("S", bi, j, src_ids[(j - 1) * nu : j * nu]) for j in range(1, nu + 1)])
        sinks.append(
            [make_tree("T", bi, j, [snk_ids[k - 1] for k in range(1, nu * nu + 1) if (k - j) % nu == 0]) for j in range(1, nu + 1)]
        )

    paths = []
    for bi, band in enumerate(bands):
        wx, wy = vectors[band.vec]
        for j in range(1, nu + 1):
            for jt in range(1, nu + 1):
                k = (j - 1) * nu + jt
                down = leaf_path[("S", bi, j)][jt - 1]
                up = leaf_path[("T", bi, jt)][j - 1]
                sx, sy = band.sources[k - 1]
                seg = [sw.grid_id(sx + i * wx, sy + i * wy) for i in range(f)]
                assert down[-1] == seg[0] and up[-1] == seg[-1]
                nodes = down + seg[1:] + up[::-1][1:]
                paths.append(InnerCriticalPath(bi + 1, j, jt, k, tuple(nodes)))

    kinds: dict[tuple[int, int], str] = {}
    for es in tree_edges.values():
        for u, v in es:
            kinds[ekey(u, v)] = TREE
    keep = set()
    for p in paths:
        for u, v in zip(p.nodes, p.nodes[1:]):
            e = ekey(u, v)
            keep.add(e)
            kinds.setdefault(e, GRID)
    sw.graph = Graph(labels, ((u, v, kinds[(u, v)]) for u, v in sorted(keep)))
    sw.sources, sw.sinks, sw.paths = sources, sinks, paths
    sw.tree_edges = {k: tuple(v) for k, v in tree_edges.items()}
    sw.tree_leaves = {k: tuple(ch[-1] for ch in v) for k, v in leaf_path.items()}
    return sw


def _assemble(sw: SourcewiseInner, with_axis: bool, with_trees: bool) -> Graph:
    es: list[tuple[int, int, str]] = []
    W, H = sw.width, sw.height
    for x in range(1, W + 1):
        for y in range(1, H + 1):
            u = sw.grid_id(x, y)
            for wx, wy in sw.vectors:
                if x + wx <= W and y + wy <= H:
                    es.append((u, sw.grid_id(x + wx, y + wy), GRID))
            if with_axis:
                if x < W:
                    es.append((u, sw.grid_id(x + 1, y), AXIS))
                if y < H:
                    es.append((u, u + 1, AXIS))
    if with_trees:
        for tes in sw.tree_edges.values():
            es.extend((u, v, TREE) for u, v in tes)
    return Graph(sw.graph.labels, es)


# -- verification ------------------------------------------------------------


@dataclass
class ClaimResult:
    ok: bool
    detail: str
    witness: object = None


@dataclass
class SourcewiseReport:
    claims: dict[str, ClaimResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims.values())

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.ok else 'FAIL'} {name}: {c.detail}" for name, c in self.claims.items()]


def verify_sourcewise(sw: SourcewiseInner, check_lattice: bool = True) -> SourcewiseReport:
    """Exact BFS checks of the sourcewise preserver.

    usp               every critical path is the unique shortest path
    private_edges     each path owns exactly f-1 lattice edges, and these
                      partition the lattice edges of the pruned graph
    group_distance    all pairs of a group sit at the same distance, equal
                      to the set distance between the group's S and T
    trees_no_shortcut tree leaves are no closer through their tree than
                      through the unpruned lattice (skipped if check_lattice
                      is False)
    leaf_distance     tree leaf distances match the balanced tree formula
                      and are >= 2*beta*|k - k'|
    band_exit         stepping by a band's own vector leaves its rectangle
    """
    g = sw.graph
    claims: dict[str, ClaimResult] = {}

    res = check_usp_many(g, [p.nodes for p in sw.paths])
    bad = [i for i, r in enumerate(res) if not r.ok]
    claims["usp"] = ClaimResult(
        not bad,
        f"{len(res) - len(bad)}/{len(res)} unique shortest paths",
        (sw.paths[bad[0]].nodes, res[bad[0]].witness) if bad else None,
    )

    owner: dict[tuple[int, int], int] = {}
    counts_ok = True
    shared = None
    for i, p in enumerate(sw.paths):
        own = [ekey(u, v) for u, v in zip(p.nodes, p.nodes[1:]) if g.kind[ekey(u, v)] == GRID]
        if len(own) != sw.f - 1:
            counts_ok = False
        for e in own:
            if e in owner and shared is None:
                shared = (e, owner[e], i)
            owner[e] = i
    grid_edges = {e for e, k in g.kind.items() if k == GRID}
    part_ok = counts_ok and shared is None and grid_edges == set(owner)
    claims["private_edges"] = ClaimResult(
        part_ok,
        f"{len(grid_edges)} lattice edges over {len(sw.paths)} paths, f-1={sw.f - 1} each",
        shared,
    )

    gd_ok, gd_detail, gd_wit = True, [], None
    for i in range(sw.b):
        S, T = sw.sources[i], sw.sinks[i]
        dists = set()
        for s in S:
            prof = bfs_profile(g, s, targets=T)
            for t in T:
                dists.add(prof.dist.get(t))
        # set distance via a virtual super-source
        adj = [list(nb) for nb in g.adj] + [list(S)]
        prof = bfs_profile(adj, len(g.adj), targets=T)
        setd = min(prof.dist.get(t, math.inf) for t in T) - 1
        if len(dists) != 1 or dists != {setd}:
            gd_ok = False
            gd_wit = gd_wit or (i + 1, sorted(dists, key=str), setd)
        gd_detail.append(setd)
    claims["group_distance"] = ClaimResult(
        gd_ok,
        f"group distances {sorted(set(gd_detail))}, expected {sw.path_length}",
        gd_wit,
    )

    tree_g = Graph(g.labels, ((u, v, TREE) for es in sw.tree_edges.values() for u, v in es))
    lf_ok, lf_wit = True, None
    for key, leaves in sorted(sw.tree_leaves.items()):
        for a_i, u in enumerate(leaves):
            prof = bfs_profile(tree_g, u, targets=leaves)
            for b_i, v in enumerate(leaves):
                if b_i <= a_i:
                    continue
                h = ((a_i ^ b_i).bit_length())  # height of the LCA above the leaves
                want = 2 * sw.beta * (2**h - 1)
                got = prof.dist.get(v)
                if got != want or got < 2 * sw.beta * (b_i - a_i):
                    lf_ok = False
                    lf_wit = lf_wit or (key, a_i, b_i, got, want)
    claims["leaf_distance"] = ClaimResult(lf_ok, f"{len(sw.tree_leaves)} trees, depth {sw.depth}, beta {sw.beta}", lf_wit)

    if check_lattice:
        lat = sw.lattice()
        tn_ok, tn_wit, pairs = True, None, 0
        for key, leaves in sorted(sw.tree_leaves.items()):
            for a_i, u in enumerate(leaves):
                rest = leaves[a_i + 1 :]
                if not rest:
                    continue
                tprof = bfs_profile(tree_g, u, targets=rest)
                lprof = bfs_profile(lat, u, targets=rest)
                for v in rest:
                    pairs += 1
                    lt = lprof.dist.get(v, math.inf)
                    if tprof.dist[v] < lt:
                        tn_ok = False
                        tn_wit = tn_wit or (key, u, v, tprof.dist[v], lt)
        claims["trees_no_shortcut"] = ClaimResult(tn_ok, f"{pairs} leaf pairs", tn_wit)

    be_ok, be_wit = True, None
    L2 = sw.profile.long_frac**2 * sw.a * sw.a * sw.c
    S2 = (sw.profile.short_frac * sw.c) ** 2
    for vi, (wx, wy) in enumerate(sw.vectors):
        rect = _Rect(wx, (sw.d, sw.d), L2, S2)
        for p in rect.lattice_points():
            if (p[0] + wx, p[1] + wy) in rect:
                be_ok = False
                be_wit = be_wit or (wx, p)
    claims["band_exit"] = ClaimResult(be_ok, f"{len(sw.vectors)} rectangles", be_wit)
    return SourcewiseReport(claims)
