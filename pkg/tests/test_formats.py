import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from instances import emulator_graph, outer, spanner_graph

from spannerlb.formats import (
    FormatError,
    dump_graph,
    dump_paths,
    dumps_json,
    dumps_jsonl,
    load_graph,
    load_paths,
)
from spannerlb.graph import Graph


@pytest.mark.parametrize("get", [lambda: outer(8, 4).graph, lambda: emulator_graph().graph, lambda: spanner_graph().graph])
def test_graph_round_trip(get):
    g = get()
    text = dump_graph(g, {"a": 8, "kind": "x"})
    back, meta = load_graph(text)
    assert back == g and back.labels == g.labels
    assert meta == {"a": "8", "kind": "x"}
    assert dump_graph(back, meta) == text


def test_header_sorted_and_versioned():
    text = dump_graph(Graph([("v", 0)], []), {"r": 4, "a": 8})
    assert text.splitlines()[0] == "# obstaclegraph v1 a=8 r=4"


def test_version_mismatch_rejected():
    text = dump_graph(Graph([("v", 0)], []), {}).replace("v1", "v2", 1)
    with pytest.raises(FormatError, match="version"):
        load_graph(text)


@pytest.mark.parametrize(
    "body,lineno,msg",
    [
        ("node 0 v 0\nnode 2 v 1\n", 3, "out of order"),
        ("node 0 v 0\nnode 1 v 1\nedge 0 1 e\nedge 0 1 e\n", 5, "duplicated"),
        ("node 0 v 0\nnode 1 v 1\nedge 0 5 e\n", 4, "0 <= u < v"),
        ("node 0 v 0\nedge 0 x e\n", 3, "expected"),
        ("node 0 v 0\nbogus\n", 3, "unknown"),
        ("node 0 v 0\n\n", 3, "blank"),
        ("node 0 v 0\nnode 1 v 1\nedge 0 1 e\nnode 2 v 2\n", 5, "after edge"),
    ],
)
def test_malformed_graph_line_numbers(body, lineno, msg):
    with pytest.raises(FormatError, match=msg) as exc:
        load_graph("# obstaclegraph v1\n" + body)
    assert exc.value.lineno == lineno
    assert str(exc.value).startswith(f"line {lineno}:")


def test_wrong_magic():
    with pytest.raises(FormatError):
        load_graph("# obstaclepaths v1\n")
    with pytest.raises(FormatError):
        load_paths("")


def test_paths_round_trip():
    og = outer(8, 4)
    recs = [({"start": ",".join(map(str, p.start)), "stripe": "-"}, p.nodes) for p in og.paths]
    text = dump_paths(recs, {"a": 8})
    back, meta = load_paths(text)
    assert [tuple(ids) for _, ids in back] == [p.nodes for p in og.paths]
    assert back[0][0] == {"start": "1,1,1", "stripe": "-"}
    assert dump_paths(back, meta) == text


def test_paths_malformed():
    with pytest.raises(FormatError, match="at least two") as exc:
        load_paths("# obstaclepaths v1\npath k=1 : 3\n")
    assert exc.value.lineno == 2
    with pytest.raises(FormatError, match="malformed"):
        load_paths("# obstaclepaths v1\npath k : 1 2\n")


def test_label_guards():
    with pytest.raises(ValueError):
        dump_graph(Graph([("v", "12")], []), {})
    with pytest.raises(ValueError):
        dump_graph(Graph([("a b",)], []), {})
    with pytest.raises(ValueError):
        dump_graph(Graph([("v",)], []), {"k": "two words"})


label_token = st.one_of(
    st.integers(-10**6, 10**6),
    st.text("abcdefghijklmnopqrstuvwxyzLRST-_", min_size=1, max_size=6).filter(lambda s: not s.lstrip("-").isdigit()),
)


@given(st.lists(st.lists(label_token, min_size=1, max_size=5).map(tuple), min_size=1, max_size=12), st.data())
def test_round_trip_property(labels, data):
    n = len(labels)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    es = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph(labels, [(u, v, "grid") for u, v in es])
    text = dump_graph(g, {"seed": 3})
    back, _ = load_graph(text)
    assert back == g and back.labels == g.labels
    assert dump_graph(back, {"seed": 3}) == text


def test_json_helpers():
    rec = {"b": float("inf"), "a": Fraction(3, 4), "c": [1, (2, 3)]}
    assert json.loads(dumps_json(rec)) == {"a": "3/4", "b": "inf", "c": [1, [2, 3]]}
    assert dumps_json(rec).index('"a"') < dumps_json(rec).index('"b"')
    assert dumps_jsonl([{"x": 1}, {"y": -float("inf")}]) == '{"x": 1}\n{"y": "-inf"}\n'
