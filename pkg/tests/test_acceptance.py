"""One test per acceptance criterion.  Each prints a single PASS/FAIL line;
the lines are collected again at the end of the pytest run.

Run alone with ``python3 -m pytest -s tests/test_acceptance.py`` or
``python3 tests/test_acceptance.py``.
"""

import math
import time
from itertools import product

import pytest
from instances import emulator_graph, move_instance, outer, record_criterion, sourcewise

from spannerlb import build_outer
from spannerlb.cli import main
from spannerlb.convex_sets import certify_extreme_points, gen_w
from spannerlb.inner_graphs import verify_sourcewise
from spannerlb.moves import move_experiment
from spannerlb.stretch_lab import critical_pair_emulator, emulator_to_spanner
from spannerlb.verify import (
    bfs_profile,
    check_clique_edge_disjoint,
    check_edge_coverage,
    check_pairwise_intersections,
    check_usp_many,
)

OUTER_SUITE = [(8, 2), (8, 4), (16, 4)]


def test_criterion_1_outer_suite():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for a, r in OUTER_SUITE:
        og = build_outer(a, r)
        paths = [list(p.nodes) for p in og.paths]
        usp = sum(res.ok for res in check_usp_many(og.graph, paths))
        inter = check_pairwise_intersections(paths)
        cov = check_edge_coverage(og.graph, paths)
        ok &= usp == len(paths) and inter.ok and cov.ok and len(paths) > 0
        parts.append(f"({a},{r}) usp {usp}/{len(paths)} pairs {inter.checked} coverage {cov.ok}")
    secs = time.perf_counter() - t0
    ok &= secs < 60
    record_criterion(1, ok, "; ".join(parts) + f"; {secs:.1f}s")
    assert ok


def _wprime_oracle(r):
    half = range(r // 2, r + 1)
    w1 = [(x, 0, x * x) for x in half]
    w2 = [(0, y, y * y) for y in half]
    w = [tuple(p + q for p, q in zip(a, b)) for a in w1 for b in w2]
    neg = lambda v: tuple(-c for c in v)
    diff = [tuple(p - q for p, q in zip(a, b)) for a in w1 for b in w2]
    return w, set(w) | {neg(v) for v in w} | set(diff) | {neg(v) for v in diff}


def test_criterion_2_convexity():
    parts, ok = [], True
    for r in (2, 4, 8, 16, 32):
        rep = certify_extreme_points(gen_w(r))
        w, wp = _wprime_oracle(r)
        # independent check: w is the strict unique maximiser of <(2x,2y,-1), .>
        brute = all(
            all(sum(a * b for a, b in zip(u, (2 * v[0], 2 * v[1], -1))) < v[0] ** 2 + v[1] ** 2 for u in wp if u != v)
            for v in w
        )
        assert {tuple(v) for v in gen_w(r).w} == set(w)
        ok &= rep.ok and not rep.violations and brute
        parts.append(f"r={r} {rep.checked} checks, {len(rep.violations)} violations")
    record_criterion(2, ok, "; ".join(parts))
    assert ok


def _recount(a, r):
    """Critical paths enumerated from scratch with plain tuples."""
    h = a * r
    half = range(r // 2, r + 1)
    zone_z = max(1, r * r // 8)
    minlen = max(1, math.ceil(a / (4 * r)))
    count = 0
    for sx, sy, sz in product(range(1, a + 1), range(1, a + 1), range(1, zone_z + 1)):
        for x in half:
            for y in half:
                nx_, nz = sx + x, sz + x * x
                if nx_ <= a and nz <= zone_z:
                    continue  # successor would be a start node
                steps = 0
                cx, cy, cz = sx, sy, sz
                while cx + x <= a and cy + y <= a and cz + x * x + y * y <= h:
                    cx, cy, cz = cx + x, cy + y, cz + x * x + y * y
                    steps += 1
                if 2 * steps >= minlen:
                    count += 1
    return 2 * a * a * h, count


def test_criterion_3_exact_counts():
    parts, ok = [], True
    for a, r in OUTER_SUITE:
        og = outer(a, r)
        st = og.stats()
        nodes, paths = _recount(a, r)
        ok &= st.nodes == nodes == 2 * a**3 * r and st.paths == paths == len(og.paths)
        parts.append(f"({a},{r}) |V_O| {st.nodes}/{nodes} |Pi| {st.paths}/{paths}")
    record_criterion(3, ok, "; ".join(parts))
    assert ok


def _dist(g, s, t):
    return bfs_profile(g, s, targets=[t]).dist.get(t, math.inf)


def test_criterion_4_emulator_suite():
    a, r, psi = 8, 4, 4
    parts, ok = [], True
    bound = min(2 * (math.ceil(a / (4 * r)) - 1), psi)
    for full in (False, True):
        ob = emulator_graph(a, r, psi, full)
        dis = check_clique_edge_disjoint(ob.clique_edge_sets())
        one = every = 0
        min_one = min_all = math.inf
        for p in ob.paths:
            s, t = p.nodes[0], p.nodes[-1]
            base = _dist(ob.graph, s, t)
            conn = p.connector_edges()
            if not conn:
                continue
            d1 = _dist(ob.graph.without_edges(conn[:1]), s, t) - base
            dall = _dist(ob.graph.without_edges(conn), s, t) - base
            one += d1 >= 2
            every += dall >= bound
            min_one, min_all = min(min_one, d1), min(min_all, dall)
        n = sum(1 for p in ob.paths if p.connector_edges())
        ok &= dis.ok and one == n and every == n
        parts.append(
            f"{'full' if full else 'pruned'} copies: disjoint {dis.ok}, one edge +>=2 {one}/{n} (min {min_one}), "
            f"all edges +>={bound} {every}/{n} (min {min_all})"
        )
    record_criterion(4, ok, "; ".join(parts))
    assert ok


def test_criterion_5_move_calculus():
    ex = move_experiment(move_instance(), references=4, per_reference=50, seed=0)
    ids = sum(1 for rec in ex.records if rec["identity"])
    ok = ex.alternates >= 100 and ex.identity_failures == 0 and ids == len(ex.records)
    ok &= ex.detours > 0 and ex.backward_moves > 0 and ex.backward_sign_failures == 0
    record_criterion(
        5,
        ok,
        f"{ex.alternates} alternates + {ex.detours} detours, identity exact on {ids}/{len(ex.records)}; "
        f"{ex.backward_moves} backward moves in detours, sign failures {ex.backward_sign_failures}, "
        f"min backward Delta {ex.min_backward_delta}",
    )
    assert ok


def test_criterion_6_sourcewise():
    parts, ok = [], True
    for a, c in [(64, 4), (128, 4), (256, 4)]:
        sw = sourcewise(a, c)
        rep = verify_sourcewise(sw)
        need = {"usp", "private_edges", "group_distance", "trees_no_shortcut"}
        ok &= rep.ok and need <= set(rep.claims)
        parts.append(f"({a},{c}) {len(sw.paths)} paths, f-1={sw.f - 1}, " + ",".join(
            f"{k}={'ok' if v.ok else 'FAIL'}" for k, v in rep.claims.items()))
    record_criterion(6, ok, "; ".join(parts))
    assert ok


def test_criterion_7_emulator_conversion():
    ob = emulator_graph(8, 4, 2)
    em = critical_pair_emulator(ob)
    conv = emulator_to_spanner(ob, em)
    audits = conv.converted
    kept = sum(a.preserved for a in audits)
    within = sum(a.within_bound for a in audits)
    worst = max(a.clique_edges for a in audits)
    ok = kept == len(audits) == em.m and within == len(audits)
    record_criterion(
        7,
        ok,
        f"distance preserved {kept}/{len(audits)}; clique edges <= 2a/r={2 * 8 // 4} on {within}/{len(audits)} "
        f"(max {worst}, outer paths of length up to {max(len(p.copies) - 1 for p in ob.paths)})",
    )
    assert kept == len(audits), "emulator_to_spanner changed a converted distance"
    assert within == len(audits), f"{len(audits) - within} converted edges exceed 2a/r clique edges"


def _run_all(root):
    out = {}
    gen = [
        ("outer", ["gen-outer", "--a", "8", "--r", "4"]),
        ("emulator", ["gen-obstacle", "--a", "8", "--r", "4", "--psi", "2", "--mode", "emulator"]),
        ("spanner", ["gen-obstacle", "--a", "16", "--r", "8", "--c", "2", "--alpha", "1/8", "--zone", "1:4,1:4,1:8",
                     "--inner-a", "64", "--inner-c", "4", "--psi", "6", "--mode", "spanner"]),
        ("inner", ["gen-inner", "--kind", "sourcewise", "--inner-a", "64", "--inner-c", "4"]),
    ]
    codes = []
    for name, argv in gen:
        d = root / name
        codes.append(main(argv + ["--out", str(d)]))
        codes.append(main(["verify", "--dir", str(d)]))
    codes.append(main(["stretch", "--dir", str(root / "emulator")]))
    codes.append(main(["moves", "--references", "1", "--per-reference", "20", "--out", str(root / "moves")]))
    for f in sorted(root.rglob("*")):
        if f.is_file():
            out[str(f.relative_to(root))] = f.read_bytes()
    return codes, out


def test_criterion_8_determinism(tmp_path):
    codes1, a = _run_all(tmp_path / "one")
    codes2, b = _run_all(tmp_path / "two")
    same = a.keys() == b.keys() and all(a[k] == b[k] for k in a)
    differ = sorted(k for k in a if a.get(k) != b.get(k))
    ok = same and codes1 == codes2
    record_criterion(8, ok, f"{len(a)} files compared byte-wise, {len(differ)} differ; exit codes {codes1}")
    assert ok, differ


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
