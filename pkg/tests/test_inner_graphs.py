import pytest
from hypothesis import given
from hypothesis import strategies as st
from instances import sourcewise

from spannerlb import build_biclique, build_sourcewise
from spannerlb.graph import GRID, TREE
from spannerlb.inner_graphs import DegenerateProfile, ScaleProfile, verify_sourcewise
from spannerlb.verify import bfs_profile


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_biclique_counts(r):
    b = build_biclique(r)
    assert b.graph.n == 2 * r and b.graph.m == r * r
    assert all(b.graph.degree(v) == r for v in range(2 * r))
    assert all(not b.graph.has_edge(b.x(i), b.x(j)) for i in range(r) for j in range(r))
    assert [b.role(v) for v in range(2 * r)] == ["source"] * r + ["sink"] * r


def test_biclique_rejects_zero():
    with pytest.raises(ValueError):
        build_biclique(0)


@given(st.integers(1, 12))
def test_block_meets_residue_once(nu):
    for j in range(1, nu + 1):
        block = set(range((j - 1) * nu + 1, j * nu + 1))
        for jt in range(1, nu + 1):
            residue = {k for k in range(1, nu * nu + 1) if (k - jt) % nu == 0}
            assert block & residue == {(j - 1) * nu + jt}


def test_block_residue_example():
    nu, j, jt = 4, 2, 3
    block = set(range((j - 1) * nu + 1, j * nu + 1))
    residue = {k for k in range(1, 17) if k % nu == jt % nu}
    assert block == {5, 6, 7, 8} and residue == {3, 7, 11, 15}
    assert block & residue == {7}


def test_three_beta_tree():
    sw = sourcewise(256, 4)
    assert sw.nu == 4 and sw.depth == 2
    assert sw.psi_tree == 2 * sw.beta + sw.beta == 3 * sw.beta
    tree = [e for es in sw.tree_edges.values() for e in es]
    from spannerlb.graph import Graph

    tg = Graph(sw.graph.labels, [(u, v, TREE) for u, v in tree])
    for (side, bi, j), leaves in sw.tree_leaves.items():
        root = (sw.sources if side == "S" else sw.sinks)[bi][j - 1]
        prof = bfs_profile(tg, root, targets=leaves)
        assert {prof.dist[v] for v in leaves} == {3 * sw.beta}


@pytest.mark.parametrize("a,c", [(64, 4), (128, 4), (256, 4)])
def test_paths_have_closed_form_length(a, c):
    sw = sourcewise(a, c)
    assert {len(p.nodes) - 1 for p in sw.paths} == {(sw.f - 1) + 2 * sw.psi_tree}
    assert sw.path_length == (sw.f - 1) + 2 * sw.psi_tree


@pytest.mark.parametrize("a,c", [(64, 4), (128, 4), (256, 4)])
def test_groups_and_pairs(a, c):
    sw = sourcewise(a, c)
    assert len(sw.paths) == sw.b * sw.nu**2
    idx = sw.path_index()
    for i in range(sw.b):
        assert len(sw.sources[i]) == len(sw.sinks[i]) == sw.nu
        for s in sw.sources[i]:
            for t in sw.sinks[i]:
                assert (s, t) in idx
                assert sw.group(s) == sw.group(t) == i + 1
    for p in sw.paths:
        assert p.k == (p.j - 1) * sw.nu + p.jt
        assert len(sw.bands[p.band - 1].sources) == sw.nu**2


@pytest.mark.parametrize("a,c", [(64, 4), (128, 4), (256, 4)])
def test_verify_passes(a, c):
    rep = verify_sourcewise(sourcewise(a, c))
    assert rep.ok, rep.lines()


def test_private_edges_are_straight_steps():
    sw = sourcewise(128, 4)
    for p in sw.paths:
        grid = [(u, v) for u, v in zip(p.nodes, p.nodes[1:]) if sw.graph.kind[min(u, v), max(u, v)] == GRID]
        assert len(grid) == sw.f - 1
    assert sum(1 for k in sw.graph.kind.values() if k == GRID) == len(sw.paths) * (sw.f - 1)


def test_sinks_are_translated_sources():
    sw = sourcewise(256, 4)
    for band in sw.bands:
        wx, wy = sw.vectors[band.vec]
        for (sx, sy), (tx, ty) in zip(band.sources, band.sinks):
            assert (tx - sx, ty - sy) == ((sw.f - 1) * wx, (sw.f - 1) * wy)


def test_vectors_parabola():
    sw = sourcewise(64, 4)
    assert sw.vectors == ((2, 4), (3, 9), (4, 16))


def test_lattice_has_axis_edges():
    sw = sourcewise(64, 4)
    lat = sw.lattice()
    assert lat.has_edge(sw.grid_id(1, 1), sw.grid_id(1, 2))
    assert lat.has_edge(sw.grid_id(1, 1), sw.grid_id(2, 1))
    assert lat.m > sw.graph.m


def test_tree_base_too_small_caught():
    sw = build_sourcewise(64, 4, ScaleProfile(tree_base=1))
    rep = verify_sourcewise(sw)
    assert not rep.claims["trees_no_shortcut"].ok
    assert rep.claims["trees_no_shortcut"].witness is not None


@pytest.mark.parametrize(
    "a,c,stage",
    [(1, 4, "grid"), (3, 9, "bands"), (32, 4, "bands"), (128, 9, "sinks")],
)
def test_degenerate_profiles_name_stage(a, c, stage):
    with pytest.raises(DegenerateProfile) as exc:
        build_sourcewise(a, c)
    assert exc.value.stage == stage


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_sourcewise(0, 4)
    with pytest.raises(ValueError):
        build_sourcewise(64, 1)


def test_deterministic():
    a, b = build_sourcewise(64, 4), build_sourcewise(64, 4)
    assert a.graph == b.graph and [p.nodes for p in a.paths] == [p.nodes for p in b.paths]
