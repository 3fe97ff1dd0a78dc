"""Command-line entry point.

    spannerlb gen-outer --a 8 --r 4 --out runs/o84
    spannerlb verify --dir runs/o84

Exit status: 0 when every check passes, 1 on a verification failure (a
witness file is written next to the outputs), 2 for an invalid
configuration or unknown flag.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path

from .formats import (
    FormatError,
    dump_graph,
    dump_paths,
    dumps_json,
    dumps_jsonl,
    load_graph,
    load_paths,
    write_text,
)
from .graph import SUBDIV, Graph, ekey
from .inner_graphs import DESK, LARGE, ScaleProfile, build_biclique, build_sourcewise
from .moves import build_move_instance, move_experiment
from .obstacle_product import (
    ObstacleGraph,
    replace_with_biclique,
    replace_with_sourcewise,
)
from .outer_graph import OuterGraph, build_outer, build_outer_striped
from .stretch_lab import (
    critical_pair_emulator,
    emulator_certificate,
    emulator_to_spanner,
    greedy_plus_k_spanner,
    measure_stretch,
    subdivided_detour_certificate,
)
from .verify import (
    UspResult,
    check_clique_edge_disjoint,
    check_edge_coverage,
    check_pairwise_intersections,
    check_usp_many,
    edge_multiplicity,
)

THREADS_ENV = "SPANNERLB_THREADS"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Everything a run depends on.  Written as config.json next to the
    outputs; the output directory itself is not part of it."""

    command: str
    a: int | None = None
    r: int | None = None
    c: int | None = None
    profile: str = "plain"  # plain | strict | relaxed
    alpha: str | None = None
    beta: str | None = None
    zone: str | None = None  # "x0:x1,y0:y1,z0:z1"
    min_length: int | None = None
    inner: str | None = None  # biclique | sourcewise
    inner_a: int | None = None
    inner_c: int | None = None
    inner_r: int | None = None
    scale: str = "desk"  # desk | large
    tree_base: str = "auto"
    full_copies: bool = False
    psi: int | None = None
    mode: str | None = None  # emulator | spanner
    k: int = 2
    references: int = 4
    per_reference: int = 50
    seed: int = 0
    threads: int = 1

    def to_json(self) -> str:
        return dumps_json(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        raw = json.loads(text)
        known = {f.name for f in fields(cls)}
        extra = set(raw) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(**raw)


# -- validation ----------------------------------------------------------------


def _need(cfg: RunConfig, *names: str) -> None:
    for n in names:
        if getattr(cfg, n) is None:
            raise ConfigError(f"--{n.replace('_', '-')} is required for {cfg.command}")


def _frac(s: str | None, name: str) -> Fraction | None:
    if s is None:
        return None
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"--{name} must be a fraction like 1/8, got {s!r}") from exc
    if not 0 < f <= 1:
        raise ConfigError(f"--{name} must lie in (0, 1], got {s}")
    return f


def _zone(s: str | None):
    if s is None:
        return None
    try:
        parts = [tuple(int(x) for x in p.split(":")) for p in s.split(",")]
    except ValueError as exc:
        raise ConfigError(f"--zone must look like 1:6,1:6,1:8, got {s!r}") from exc
    if len(parts) != 3 or any(len(p) != 2 or p[0] > p[1] for p in parts):
        raise ConfigError(f"--zone must look like 1:6,1:6,1:8, got {s!r}")
    return tuple(parts)


def _tree_base(s: str):
    if s in ("auto", "sqrt"):
        return s
    if s.isdigit() and int(s) >= 1:
        return int(s)
    raise ConfigError(f"--tree-base must be auto, sqrt or a positive int, got {s!r}")


def _scale(cfg: RunConfig) -> ScaleProfile:
    if cfg.scale not in ("desk", "large"):
        raise ConfigError(f"--scale must be desk or large, got {cfg.scale!r}")
    base = DESK if cfg.scale == "desk" else LARGE
    tb = _tree_base(cfg.tree_base)
    if tb == base.tree_base:
        return base
    return ScaleProfile(base.name, base.long_frac, base.short_frac, base.band_frac, base.offset_frac, base.shift_frac, tb)


def validate(cfg: RunConfig) -> None:
    for name in ("a", "r", "c", "inner_a", "inner_c", "inner_r", "psi", "min_length"):
        v = getattr(cfg, name)
        if v is not None and (not isinstance(v, int) or v < 1):
            raise ConfigError(f"--{name.replace('_', '-')} must be a positive integer, got {v!r}")
    if cfg.r is not None and cfg.r % 2:
        raise ConfigError(f"--r must be even, got {cfg.r}")
    if cfg.profile not in ("plain", "strict", "relaxed"):
        raise ConfigError(f"--profile must be plain, strict or relaxed, got {cfg.profile!r}")
    if cfg.profile != "plain" and cfg.c is None:
        raise ConfigError(f"--profile {cfg.profile} needs --c")
    if cfg.profile == "plain" and cfg.c is not None:
        raise ConfigError("--c needs --profile strict or relaxed")
    _frac(cfg.alpha, "alpha")
    _frac(cfg.beta, "beta")
    _zone(cfg.zone)
    _tree_base(cfg.tree_base)
    if cfg.mode not in (None, "emulator", "spanner"):
        raise ConfigError(f"--mode must be emulator or spanner, got {cfg.mode!r}")
    if cfg.inner not in (None, "biclique", "sourcewise"):
        raise ConfigError(f"--kind must be biclique or sourcewise, got {cfg.inner!r}")
    if not 0 <= cfg.seed < 2**64:
        raise ConfigError("--seed must fit in 64 bits")
    if cfg.threads < 1:
        raise ConfigError("--threads must be >= 1")
    if cfg.k < 0:
        raise ConfigError("--k must be >= 0")
    if cfg.references < 1 or cfg.per_reference < 1:
        raise ConfigError("--references and --per-reference must be >= 1")

    cmd = cfg.command
    if cmd == "gen-outer":
        _need(cfg, "a", "r")
    elif cmd == "gen-inner":
        _need(cfg, "inner")
        if cfg.inner == "biclique":
            _need(cfg, "inner_r")
        else:
            _need(cfg, "inner_a", "inner_c")
            _scale(cfg)
    elif cmd == "gen-obstacle":
        _need(cfg, "a", "r", "psi", "mode")
        if cfg.mode == "spanner":
            _need(cfg, "c", "inner_a", "inner_c")
            if cfg.profile == "plain":
                raise ConfigError("spanner mode needs --profile strict or relaxed")
            _scale(cfg)
    elif cmd == "moves":
        _need(cfg, "a", "r", "c", "psi", "inner_a", "inner_c")
        if cfg.profile != "relaxed":
            raise ConfigError("moves uses the relaxed stripe profile")


# -- builders --------------------------------------------------------------------


def build_outer_from(cfg: RunConfig) -> OuterGraph:
    zone = _zone(cfg.zone)
    if cfg.profile == "plain":
        return build_outer(cfg.a, cfg.r, start_zone=zone, min_length=cfg.min_length)
    return build_outer_striped(
        cfg.a, cfg.r, cfg.c, cfg.profile, _frac(cfg.alpha, "alpha"), _frac(cfg.beta, "beta"), zone, cfg.min_length
    )


def build_obstacle_from(cfg: RunConfig) -> ObstacleGraph:
    og = build_outer_from(cfg)
    if cfg.mode == "emulator":
        return replace_with_biclique(og, cfg.psi, cfg.inner_r, prune_inner=not cfg.full_copies)
    sw = build_sourcewise(cfg.inner_a, cfg.inner_c, _scale(cfg))
    return replace_with_sourcewise(og, sw, cfg.psi, prune_inner=not cfg.full_copies)


_OUTER_KEYS = ("a", "r", "c", "profile", "alpha", "beta", "zone", "min_length")
_INNER_KEYS = ("inner_a", "inner_c", "inner_r", "scale", "tree_base")
_META_KEYS = {
    "outer": _OUTER_KEYS,
    "inner": ("inner",) + _INNER_KEYS,
    "obstacle": _OUTER_KEYS + _INNER_KEYS + ("psi", "mode", "full_copies"),
}


def _meta(cfg: RunConfig, kind: str) -> dict:
    """Header fields: the generation parameters that apply to ``kind``."""
    out = {"kind": kind}
    for name in _META_KEYS[kind]:
        v = getattr(cfg, name)
        if v is None:
            continue
        if kind == "inner" and name in ("scale", "tree_base") and cfg.inner == "biclique":
            continue
        if kind == "obstacle" and name in ("scale", "tree_base") and cfg.mode == "emulator":
            continue
        out[name] = str(v).lower() if isinstance(v, bool) else v
    return out


def _vec(v) -> str:
    return ",".join(map(str, v))


# -- commands --------------------------------------------------------------------


def _write_common(out: Path, cfg: RunConfig, g: Graph, meta: dict, records, stats: dict) -> None:
    write_text(out / "config.json", cfg.to_json())
    write_text(out / "graph.txt", dump_graph(g, meta))
    write_text(out / "paths.txt", dump_paths(records, meta))
    write_text(out / "stats.json", dumps_json(stats))


def cmd_gen_outer(cfg: RunConfig, out: Path) -> int:
    og = build_outer_from(cfg)
    if not og.paths:
        raise ConfigError("no critical path survives for these parameters")
    meta = _meta(cfg, "outer")
    recs = [
        ({"start": _vec(p.start), "w1": p.w1.x, "w2": p.w2.y, "stripe": p.stripe or 0}, p.nodes)
        for p in og.paths
    ]
    _write_common(out, cfg, og.graph, meta, recs, asdict(og.stats()))
    return 0


def cmd_gen_inner(cfg: RunConfig, out: Path) -> int:
    meta = _meta(cfg, "inner")
    if cfg.inner == "biclique":
        bic = build_biclique(cfg.inner_r)
        _write_common(out, cfg, bic.graph, meta, [], {"nodes": bic.graph.n, "edges": bic.graph.m})
        return 0
    sw = build_sourcewise(cfg.inner_a, cfg.inner_c, _scale(cfg))
    meta.update(f=sw.f, beta=sw.beta, nu=sw.nu, depth=sw.depth)
    recs = [({"band": p.band, "j": p.j, "jt": p.jt, "k": p.k}, p.nodes) for p in sw.paths]
    stats = {
        "width": sw.width, "height": sw.height, "d": sw.d, "f": sw.f, "beta": sw.beta,
        "nu": sw.nu, "depth": sw.depth, "groups": sw.b, "paths": len(sw.paths),
        "path_length": sw.path_length, "nodes": sw.graph.n, "edges": sw.graph.m,
        "edges_by_kind": sw.graph.kind_counts(),
    }
    _write_common(out, cfg, sw.graph, meta, recs, stats)
    return 0


def cmd_gen_obstacle(cfg: RunConfig, out: Path) -> int:
    ob = build_obstacle_from(cfg)
    meta = _meta(cfg, "obstacle")
    recs = [({"outer": p.outer, "copies": len(p.copies)}, p.nodes) for p in ob.paths]
    _write_common(out, cfg, ob.graph, meta, recs, asdict(ob.stats()))
    return 0


def _usp_parallel(g: Graph, paths: list[list[int]], threads: int) -> list[UspResult]:
    by_start: dict[int, list[int]] = defaultdict(list)
    for i, p in enumerate(paths):
        by_start[p[0]].append(i)
    starts = sorted(by_start)
    chunks = [starts[i::threads] for i in range(threads)]

    def run(chunk):
        idx = [i for s in chunk for i in by_start[s]]
        return idx, check_usp_many(g, [paths[i] for i in idx])

    res: list[UspResult | None] = [None] * len(paths)
    with ThreadPoolExecutor(max_workers=threads) as ex:
        for idx, rs in ex.map(run, chunks):
            for i, r in zip(idx, rs):
                res[i] = r
    return res  # type: ignore[return-value]


def cmd_verify(cfg: RunConfig, src: Path) -> int:
    g, meta = load_graph((src / "graph.txt").read_text())
    recs, _ = load_paths((src / "paths.txt").read_text())
    paths = [p for _, p in recs]
    kind = meta.get("kind", "")
    checks: dict[str, dict] = {}
    witness: list[str] = []

    missing = []
    for i, p in enumerate(paths):
        for a, b in zip(p, p[1:]):
            if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
                missing.append((i, (a, b)))
                break
    checks["path_edges"] = {"ok": not missing, "checked": len(paths), "failures": len(missing)}
    for i, e in missing:
        witness.append(f"path {i}: ({e[0]},{e[1]}) is not an edge")
    walkable = [i for i in range(len(paths)) if i not in {j for j, _ in missing}]

    usp = _usp_parallel(g, [paths[i] for i in walkable], cfg.threads)
    bad = [(walkable[k], r) for k, r in enumerate(usp) if not r.ok]
    checks["usp"] = {"ok": not bad, "checked": len(usp), "failures": len(bad)}
    for i, r in bad:
        witness.append(f"path {i}: {r.reason}")
        if r.witness:
            witness.append("  witness " + " ".join(map(str, r.witness)))

    def family(name, rep, fmt):
        checks[name] = {"ok": rep.ok, "checked": rep.checked, "failures": len(rep.violations)}
        witness.extend(f"{name}: {fmt(v)}" for v in rep.violations[:50])

    if kind == "outer":
        family("intersections", check_pairwise_intersections(paths, 2), lambda v: f"paths {v[0]},{v[1]} share {v[2]}")
        family("coverage", check_edge_coverage(g, paths), lambda v: f"{v[0]} edge {v[1]}")
    elif kind == "obstacle":
        inner_edges = [[ekey(a, b) for a, b in zip(p, p[1:]) if g.kind.get(ekey(a, b)) not in (None, SUBDIV)] for p in paths]
        family("clique_disjoint", check_clique_edge_disjoint(inner_edges), lambda v: f"edge {v[0]} on paths {v[1]}")
        kinds = None if meta.get("full_copies") != "true" else [SUBDIV]
        family("coverage", check_edge_coverage(g, paths, kinds), lambda v: f"{v[0]} edge {v[1]}")
    elif kind == "inner" and recs:
        grid = [[ekey(a, b) for a, b in zip(p, p[1:]) if g.kind.get(ekey(a, b)) == "grid"] for p in paths]
        family("grid_disjoint", check_clique_edge_disjoint(grid), lambda v: f"edge {v[0]} on paths {v[1]}")
        f = int(meta["f"])
        off = [i for i, es in enumerate(grid) if len(es) != f - 1]
        checks["private_edges"] = {"ok": not off, "checked": len(grid), "failures": len(off)}
        witness.extend(f"private_edges: path {i} has {len(grid[i])} grid edges, expected {f - 1}" for i in off)
        lens = defaultdict(set)
        for (fl, _), p in zip(recs, paths):
            lens[fl["band"]].add(len(p) - 1)
        uneven = sorted(b for b, s in lens.items() if len(s) > 1)
        checks["group_lengths"] = {"ok": not uneven, "checked": len(lens), "failures": len(uneven)}
        witness.extend(f"group_lengths: band {b} has lengths {sorted(lens[b])}" for b in uneven)
        family("coverage", check_edge_coverage(g, paths), lambda v: f"{v[0]} edge {v[1]}")

    ok = all(c["ok"] for c in checks.values())
    report = {"kind": kind, "ok": ok, "checks": checks, "paths": len(paths), "nodes": g.n, "edges": g.m}
    write_text(src / "verify.json", dumps_json(report))
    wfile = src / "witness.txt"
    if ok:
        if wfile.exists():
            wfile.unlink()
    else:
        write_text(wfile, "\n".join(witness) + "\n")
    print(dumps_json(report), end="")
    return 0 if ok else 1


def cmd_stats(cfg: RunConfig, src: Path) -> int:
    g, meta = load_graph((src / "graph.txt").read_text())
    recs, _ = load_paths((src / "paths.txt").read_text())
    paths = [p for _, p in recs]
    mult = edge_multiplicity(paths)
    report = {
        "kind": meta.get("kind"),
        "nodes": g.n,
        "edges": g.m,
        "isolated": sum(1 for a in g.adj if not a),
        "edges_by_kind": g.kind_counts(),
        "paths": len(paths),
        "length_hist": dict(sorted(Counter(len(p) - 1 for p in paths).items())),
        "multiplicity_max": max(mult.values(), default=0),
        "multiplicity_hist": dict(sorted(Counter(mult.values()).items())),
    }
    print(dumps_json(report), end="")
    return 0


def _load_config(src: Path) -> RunConfig:
    try:
        cfg = RunConfig.from_json((src / "config.json").read_text())
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise ConfigError(f"cannot read {src / 'config.json'}: {exc}") from exc
    validate(cfg)
    return cfg


def cmd_stretch(cfg: RunConfig, src: Path) -> int:
    gen = _load_config(src)
    if gen.command != "gen-obstacle":
        raise ConfigError(f"{src} holds a {gen.command} run, stretch needs gen-obstacle")
    ob = build_obstacle_from(gen)
    if dump_graph(ob.graph, _meta(gen, "obstacle")) != (src / "graph.txt").read_text():
        print(f"{src / 'graph.txt'} does not match its config.json", file=sys.stderr)
        return 1
    g = ob.graph
    rng = random.Random(cfg.seed)
    pairs = [(p.nodes[0], p.nodes[-1]) for p in ob.paths]
    records = []
    failures = []

    sp = greedy_plus_k_spanner(g, cfg.k)
    st = measure_stretch(g, sp.graph, pairs)
    rec = {"experiment": "greedy", "k": cfg.k, "edges": sp.graph.m, "host_edges": g.m,
           "max_error": st.max_error, "histogram": st.histogram, "pairs": st.pairs}
    records.append(rec)
    if st.max_error > cfg.k:
        failures.append(f"greedy +{cfg.k} spanner has error {st.max_error} on {st.argmax}")

    picks = sorted(rng.sample(range(len(ob.paths)), min(3, len(ob.paths))))
    for idx in picks:
        p = ob.paths[idx]
        conn = p.connector_edges()
        for label, drop in (("one_connector_edge", conn[:1]), ("all_connector_edges", conn)):
            if not drop:
                continue
            h = g.without_edges(drop)
            cert = subdivided_detour_certificate(ob, h, idx)
            records.append({"experiment": "deletion", "path": idx, "deleted": label, "edges_deleted": len(drop),
                            "mode": cert.mode, "difference": cert.difference, "bound": cert.bound, "holds": cert.holds})
            if not cert.holds:
                failures.append(f"path {idx}, {label}: difference {cert.difference} < bound {cert.bound}")

    if ob.mode == "emulator":
        em = critical_pair_emulator(ob, max(1, len(ob.paths) // 64), cfg.seed)
        conv = emulator_to_spanner(ob, em)
        verdict = emulator_certificate(ob, em)
        over = [a for a in conv.converted if not a.within_bound]
        lost = [a for a in conv.converted if not a.preserved]
        records.append({"experiment": "emulator", **asdict(verdict),
                        "converted": len(conv.converted), "preserved": len(conv.converted) - len(lost),
                        "clique_bound": Fraction(2 * ob.outer.a, ob.outer.r), "over_clique_bound": len(over)})
        failures.extend(f"emulator edge {a.edge}: distance not preserved" for a in lost)

    ok = not failures
    write_text(src / "stretch.jsonl", dumps_jsonl(records))
    write_text(src / "stretch.json", dumps_json({"ok": ok, "failures": failures, "k": cfg.k, "seed": cfg.seed}))
    if failures:
        write_text(src / "stretch-witness.txt", "\n".join(failures) + "\n")
    print(dumps_json({"ok": ok, "failures": len(failures), "records": len(records)}), end="")
    return 0 if ok else 1


def cmd_moves(cfg: RunConfig, out: Path) -> int:
    zone = _zone(cfg.zone) or ((1, 6), (1, 6), (1, 8))
    ob = build_move_instance(
        cfg.a, cfg.r, cfg.c, _frac(cfg.alpha, "alpha") or Fraction(1, 8), zone,
        cfg.inner_a, cfg.inner_c, _tree_base(cfg.tree_base), cfg.psi,
    )
    exp = move_experiment(ob, cfg.references, cfg.per_reference, cfg.seed)
    summary = {
        "ok": exp.ok,
        "references": exp.references,
        "alternates": exp.alternates,
        "detours": exp.detours,
        "identity_failures": exp.identity_failures,
        "audit_failures": exp.audit_failures,
        "backward_moves_in_detours": exp.backward_moves,
        "backward_sign_failures": exp.backward_sign_failures,
        "min_backward_delta": exp.min_backward_delta,
        "class_counts": exp.class_counts,
        "nodes": ob.graph.n,
        "edges": ob.graph.m,
    }
    write_text(out / "config.json", cfg.to_json())
    write_text(out / "moves.jsonl", dumps_jsonl(exp.records))
    write_text(out / "moves.json", dumps_json(summary))
    if not exp.ok:
        write_text(out / "witness.txt", "\n".join(exp.violations) + "\n")
    print(dumps_json(summary), end="")
    return 0 if exp.ok else 1


# -- argument parsing ------------------------------------------------------------


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return int(raw)
    except ValueError:
        return 0  # rejected by validate


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spannerlb", description="Obstacle-product lower-bound graphs and their certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=None, help=f"default from ${THREADS_ENV}, else 1")
        if out:
            p.add_argument("--out", required=True, type=Path)

    def outer_flags(p, a_required=True):
        p.add_argument("--a", type=int, required=a_required)
        p.add_argument("--r", type=int, required=a_required)
        p.add_argument("--c", type=int)
        p.add_argument("--profile", default=None, choices=["plain", "strict", "relaxed"])
        p.add_argument("--alpha")
        p.add_argument("--beta")
        p.add_argument("--zone")
        p.add_argument("--min-length", type=int)

    def inner_flags(p):
        p.add_argument("--inner-a", type=int)
        p.add_argument("--inner-c", type=int)
        p.add_argument("--inner-r", type=int)
        p.add_argument("--scale", default="desk", choices=["desk", "large"])
        p.add_argument("--tree-base", default="auto")

    p = sub.add_parser("gen-outer", help="outer graph and its critical paths")
    outer_flags(p)
    common(p)

    p = sub.add_parser("gen-inner", help="biclique or sourcewise inner graph")
    p.add_argument("--kind", required=True, choices=["biclique", "sourcewise"], dest="inner")
    inner_flags(p)
    common(p)

    p = sub.add_parser("gen-obstacle", help="obstacle product")
    outer_flags(p)
    inner_flags(p)
    p.add_argument("--psi", type=int, required=True)
    p.add_argument("--mode", required=True, choices=["emulator", "spanner"])
    p.add_argument("--full-copies", action="store_true", help="keep whole inner graphs in touched copies")
    common(p)

    for name, hlp in (("verify", "check a generated instance"), ("stats", "recount an instance from its files")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--dir", required=True, type=Path)
        common(p, out=False)

    p = sub.add_parser("stretch", help="spanner and emulator experiments on a gen-obstacle directory")
    p.add_argument("--dir", required=True, type=Path)
    p.add_argument("--k", type=int, default=2)
    common(p, out=False)

    p = sub.add_parser("moves", help="move decomposition audit on a dense striped spanner instance")
    p.add_argument("--a", type=int, default=20)
    p.add_argument("--r", type=int, default=8)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--alpha", default="1/8")
    p.add_argument("--zone", default="1:6,1:6,1:8")
    p.add_argument("--inner-a", type=int, default=64)
    p.add_argument("--inner-c", type=int, default=4)
    p.add_argument("--tree-base", default="2")
    p.add_argument("--psi", type=int, default=6)
    p.add_argument("--references", type=int, default=4)
    p.add_argument("--per-reference", type=int, default=50)
    common(p)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    vals = vars(ns).copy()
    vals.pop("out", None)
    vals.pop("dir", None)
    if vals.get("threads") is None:
        vals["threads"] = _default_threads()
    if vals["command"] == "moves":
        vals["profile"] = "relaxed"
    elif vals.get("profile") is None:
        vals["profile"] = "relaxed" if vals.get("c") is not None else "plain"
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vals.items() if k in known})


COMMANDS = {
    "gen-outer": cmd_gen_outer,
    "gen-inner": cmd_gen_inner,
    "gen-obstacle": cmd_gen_obstacle,
    "verify": cmd_verify,
    "stats": cmd_stats,
    "stretch": cmd_stretch,
    "moves": cmd_moves,
}


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        validate(cfg)
        where = ns.out if hasattr(ns, "out") else ns.dir
        return COMMANDS[cfg.command](cfg, where)
    except (ConfigError, FormatError) as exc:
        print(f"spannerlb {ns.command}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"spannerlb {ns.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # construction rejected the parameters
        print(f"spannerlb {ns.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
