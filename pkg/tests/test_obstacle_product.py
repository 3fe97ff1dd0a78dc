import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from instances import emulator_graph, outer, sourcewise, spanner_graph

from spannerlb import (
    build_outer,
    build_outer_striped,
    replace_with_biclique,
    replace_with_sourcewise,
)
from spannerlb.graph import CLIQUE, GRID, SUBDIV
from spannerlb.obstacle_product import (
    psi_emulator_balance,
    psi_spanner_balance,
    subdivide,
)
from spannerlb.verify import (
    bfs_profile,
    check_clique_edge_disjoint,
    check_edge_coverage,
    check_usp_many,
)


def contract(ob, path):
    seq = []
    for v in path.nodes:
        o = ob.node_copy[v]
        if o >= 0 and (not seq or seq[-1] != o):
            seq.append(o)
    return tuple(seq)


def test_subdivide_single_edge():
    og = build_outer(8, 4, start_zone=((1, 1), (1, 1), (1, 1)), min_length=6)
    og1 = build_outer(8, 4, start_zone=((1, 1), (1, 1), (1, 1)), min_length=6)
    og1.graph = og1.graph.edge_subgraph([og.graph.edges()[0][:2]])
    sd = subdivide(og1, 4)
    assert sd.graph.n - og1.graph.n == 3
    assert sd.graph.m == 4 and set(sd.graph.kind.values()) == {SUBDIV}


@pytest.mark.parametrize("psi", [1, 2, 5])
def test_subdivide_counts(psi):
    og = outer(8, 4)
    sd = subdivide(og, psi)
    assert sd.graph.n == og.graph.n + (psi - 1) * og.graph.m
    assert sd.graph.m == psi * og.graph.m
    assert all(len(ch) == psi + 1 for ch in sd.chains.values())


def test_biclique_paths():
    ob = emulator_graph()
    og = ob.outer
    assert len(ob.paths) == len(og.paths)
    for p, po in zip(ob.paths, og.paths):
        k = po.length
        assert contract(ob, p) == po.nodes == p.copies
        assert len(p.connector_edges()) == k - 1 >= -(-og.a // (4 * og.r)) - 1
        assert p.length == k * ob.psi + k - 1
        assert all(ob.graph.kind[e] == CLIQUE for e in p.connector_edges())


def test_biclique_attachment_sides():
    ob = emulator_graph()
    for (t, h), ch in ob.chains.items():
        tail, head = ob.graph.labels[ch[0]], ob.graph.labels[ch[-1]]
        assert tail[1] == t and head[1] == h
        assert ob.role(ch[0]) == "sink" and ob.role(ch[-1]) == "source"
        # the i-th vector enters at x^i and leaves from y^i
        i = tail[2] - ob.inner.r
        assert head[2] == i


@pytest.mark.parametrize("full", [False, True])
def test_emulator_invariants(full):
    ob = emulator_graph(full=full)
    paths = [list(p.nodes) for p in ob.paths]
    assert all(r.ok for r in check_usp_many(ob.graph, paths))
    assert check_clique_edge_disjoint(ob.clique_edge_sets()).ok
    if not full:
        assert check_edge_coverage(ob.graph, paths).ok


def test_node_formula_full_copies():
    ob = emulator_graph(full=True)
    og = ob.outer
    s = ob.stats()
    assert s.nodes_formula == (ob.psi - 1) * og.graph.m + ob.inner.graph.n * og.graph.n
    assert s.nodes == s.nodes_formula - ob.inner.graph.n * len(og.isolated())
    assert s.edges_by_kind[CLIQUE] == ob.inner.graph.m * (og.graph.n - len(og.isolated()))
    assert s.edges_by_kind[SUBDIV] == ob.psi * og.graph.m
    assert sum(s.edges_by_kind.values()) == s.edges


def test_one_deleted_clique_edge_costs_two():
    ob = emulator_graph(full=True)
    for p in ob.paths[:20]:
        e = p.connector_edges()[0]
        h = ob.graph.without_edges([e])
        d = bfs_profile(h, p.nodes[0], targets=[p.nodes[-1]]).dist.get(p.nodes[-1], float("inf"))
        assert d - p.length >= 2


def test_spanner_paths():
    ob = spanner_graph()
    sw = ob.inner
    og = ob.outer
    for p, po in zip(ob.paths, og.paths):
        assert contract(ob, p) == po.nodes
        for o, i, j in p.connectors:
            seg = p.nodes[i : j + 1]
            assert ob.role(seg[0]) == "source" and ob.role(seg[-1]) == "sink"
            assert ob.group(seg[0]) == ob.group(seg[-1]) == po.stripe
            assert len(seg) - 1 == sw.path_length
            grid = [e for e in zip(seg, seg[1:]) if ob.graph.kind[min(e), max(e)] == GRID]
            assert len(grid) == sw.f - 1


def test_spanner_invariants():
    ob = spanner_graph()
    paths = [list(p.nodes) for p in ob.paths]
    assert all(r.ok for r in check_usp_many(ob.graph, paths))
    assert check_clique_edge_disjoint(ob.clique_edge_sets()).ok
    assert check_edge_coverage(ob.graph, paths).ok


def test_roots_touch_at_most_one_chain():
    ob = spanner_graph()
    for v in range(ob.graph.n):
        if ob.role(v) in ("source", "sink"):
            sub = sum(1 for u in ob.graph.adj[v] if ob.graph.kind[min(u, v), max(u, v)] == SUBDIV)
            assert sub <= 1


def test_rejections():
    with pytest.raises(ValueError, match="striped"):
        replace_with_sourcewise(outer(8, 4), sourcewise(64, 4), 2)
    with pytest.raises(ValueError, match="too small"):
        replace_with_biclique(outer(8, 4), 2, inner_r=2)
    with pytest.raises(ValueError):
        replace_with_biclique(outer(8, 4), 0)
    og = build_outer_striped(16, 8, 2, "relaxed", alpha=Fraction(1, 8))
    with pytest.raises(ValueError, match="sources"):
        replace_with_sourcewise(og, dataclasses.replace(sourcewise(64, 4), nu=1), 2)


def test_balance_helpers():
    assert psi_emulator_balance(8, 4) == 2
    assert psi_emulator_balance(9, 4) == 3


@given(st.integers(1, 40), st.integers(2, 9), st.sampled_from([Fraction(29, 3), Fraction(3), Fraction(1, 2)]))
def test_spanner_balance_is_least(r, c, e):
    m = psi_spanner_balance(r, c, e)
    p, q = e.numerator, e.denominator

    def ok(x):
        return Fraction(x) ** q * Fraction(c) ** p >= Fraction(r) ** (3 * q)

    assert m >= 1 and ok(m)
    assert m == 1 or not ok(m - 1)


@settings(max_examples=8, deadline=None)
@given(st.integers(2, 5), st.booleans())
def test_small_emulator_property(psi, full):
    og = build_outer(8, 2, start_zone=((1, 8), (1, 8), (1, 2)))
    ob = replace_with_biclique(og, psi, prune_inner=not full)
    paths = [list(p.nodes) for p in ob.paths]
    assert all(r.ok for r in check_usp_many(ob.graph, paths))
    assert check_clique_edge_disjoint(ob.clique_edge_sets()).ok
