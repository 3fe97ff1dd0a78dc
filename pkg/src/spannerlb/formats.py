"""Versioned text formats for graphs, path families and run records.

Graph file::

    # obstaclegraph v1 a=8 kind=outer profile=plain r=4
    node 0 outer L 1 1 1
    ...
    edge 0 2564 outer

Paths file::

    # obstaclepaths v1 a=8 kind=outer profile=plain r=4
    path start=1,1,1 stripe=0 w1=2 w2=2 : 0 2564 ...

Header fields are sorted by key.  Label fields are integers or short
strings that do not parse as integers, so reading a file back gives the
identical labels and writing them again gives the identical bytes.
"""

from __future__ import annotations

import json
import re
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path

from .graph import Graph

VERSION = "v1"
GRAPH_MAGIC = "obstaclegraph"
PATHS_MAGIC = "obstaclepaths"

_INT = re.compile(r"-?\d+\Z")


class FormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _token(v) -> str:
    s = str(v)
    if not s or any(ch.isspace() for ch in s) or s == ":":
        raise ValueError(f"cannot serialise field {v!r}")
    if isinstance(v, str) and _INT.match(s):
        raise ValueError(f"string field {v!r} would read back as an int")
    return s


def _parse_token(s: str):
    return int(s) if _INT.match(s) else s


def _header(magic: str, meta: Mapping[str, object]) -> str:
    parts = [f"# {magic} {VERSION}"]
    for k in sorted(meta):
        if "=" in k or not k:
            raise ValueError(f"bad header key {k!r}")
        v = str(meta[k])
        if not v or any(ch.isspace() for ch in v):
            raise ValueError(f"bad header value {v!r} for {k}")
        parts.append(f"{k}={v}")
    return " ".join(parts)


def _read_header(line: str, magic: str) -> dict[str, str]:
    parts = line.split()
    if len(parts) < 3 or parts[0] != "#" or parts[1] != magic:
        raise FormatError(1, f"expected '# {magic} {VERSION} ...' header")
    if parts[2] != VERSION:
        raise FormatError(1, f"unsupported version {parts[2]!r}, this reader handles {VERSION}")
    meta = {}
    for p in parts[3:]:
        k, sep, v = p.partition("=")
        if not sep or not k:
            raise FormatError(1, f"malformed header field {p!r}")
        meta[k] = v
    return meta


# -- graphs --------------------------------------------------------------------


def dump_graph(g: Graph, meta: Mapping[str, object]) -> str:
    lines = [_header(GRAPH_MAGIC, meta)]
    for i, lab in enumerate(g.labels):
        lines.append(" ".join(["node", str(i), *map(_token, lab)]))
    for u, v, k in g.edges():
        lines.append(f"edge {u} {v} {_token(k)}")
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> tuple[Graph, dict[str, str]]:
    lines = text.splitlines()
    if not lines:
        raise FormatError(1, "empty file")
    meta = _read_header(lines[0], GRAPH_MAGIC)
    labels: list[tuple] = []
    edges: list[tuple[int, int, str]] = []
    seen_edge = False
    prev = None
    for no, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if not parts:
            raise FormatError(no, "blank line")
        tag = parts[0]
        if tag == "node":
            if seen_edge:
                raise FormatError(no, "node line after edge lines")
            if len(parts) < 3 or not _INT.match(parts[1]):
                raise FormatError(no, "expected 'node <id> <kind> <fields...>'")
            if int(parts[1]) != len(labels):
                raise FormatError(no, f"node id {parts[1]} out of order, expected {len(labels)}")
            labels.append(tuple(_parse_token(p) for p in parts[2:]))
        elif tag == "edge":
            seen_edge = True
            if len(parts) != 4 or not (_INT.match(parts[1]) and _INT.match(parts[2])):
                raise FormatError(no, "expected 'edge <u> <v> <kind>'")
            u, v = int(parts[1]), int(parts[2])
            if not (0 <= u < v < len(labels)):
                raise FormatError(no, f"edge ({u},{v}) needs 0 <= u < v < {len(labels)}")
            if prev is not None and (u, v) <= prev:
                raise FormatError(no, f"edge ({u},{v}) duplicated or out of order")
            prev = (u, v)
            edges.append((u, v, parts[3]))
        else:
            raise FormatError(no, f"unknown record {tag!r}")
    return Graph(labels, edges), meta


# -- path families -------------------------------------------------------------


def dump_paths(records: Iterable[tuple[Mapping[str, object], Sequence[int]]], meta: Mapping[str, object]) -> str:
    lines = [_header(PATHS_MAGIC, meta)]
    for fields, nodes in records:
        head = " ".join(f"{k}={_token(fields[k])}" for k in sorted(fields))
        body = " ".join(map(str, nodes))
        lines.append(f"path {head} : {body}" if head else f"path : {body}")
    return "\n".join(lines) + "\n"


def load_paths(text: str) -> tuple[list[tuple[dict[str, str], list[int]]], dict[str, str]]:
    lines = text.splitlines()
    if not lines:
        raise FormatError(1, "empty file")
    meta = _read_header(lines[0], PATHS_MAGIC)
    out = []
    for no, line in enumerate(lines[1:], start=2):
        head, sep, body = line.partition(" : ")
        parts = head.split()
        if not sep or not parts or parts[0] != "path":
            raise FormatError(no, "expected 'path <key=value...> : <node ids>'")
        fields = {}
        for p in parts[1:]:
            k, eq, v = p.partition("=")
            if not eq or not k:
                raise FormatError(no, f"malformed field {p!r}")
            fields[k] = v
        ids = body.split()
        if len(ids) < 2 or not all(_INT.match(x) for x in ids):
            raise FormatError(no, "a path needs at least two integer node ids")
        out.append((fields, [int(x) for x in ids]))
    return out, meta


# -- json ----------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "numerator") and not isinstance(obj, (int, bool)):
        return str(obj)
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n"


def dumps_jsonl(records: Iterable) -> str:
    return "".join(json.dumps(_plain(r), sort_keys=True) + "\n" for r in records)


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
