from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from instances import move_instance, spanner_graph

from spannerlb.moves import (
    BACKWARD,
    FORWARD_SAME,
    backward_detours,
    delta_bound_audit,
    move_decompose,
    move_experiment,
    rank_reference_paths,
    sample_alternate_paths,
    truncated_critical_path,
)


@pytest.fixture(scope="module")
def ob():
    return move_instance()


@pytest.fixture(scope="module")
def star(ob):
    return truncated_critical_path(ob, rank_reference_paths(ob)[0])


def test_reference_against_itself(ob, star):
    dec = move_decompose(ob, list(star.nodes), star)
    assert {m.cls for m in dec.moves} == {FORWARD_SAME}
    assert dec.total_delta == 0
    # each move crosses one subdivided edge and one connector
    step = ob.psi + ob.inner.path_length
    x, y = star.w1.x, star.w2.y
    want1 = step - Fraction(2 * step * x * x, x * x + y * y)
    assert [m.length for m in dec.moves] == [step] * len(dec.moves)
    assert [m.delta for m in dec.moves] == [want1, -want1] * (len(dec.moves) // 2)
    audit = delta_bound_audit(dec)
    assert audit.ok and audit.pairs_checked == len(dec.moves) - 1


def test_reference_deltas_vanish_on_the_diagonal(ob):
    for i in rank_reference_paths(ob):
        s = truncated_critical_path(ob, i)
        if s.w1.x == s.w2.y:
            dec = move_decompose(ob, list(s.nodes), s)
            assert all(m.delta == 0 for m in dec.moves)
            break
    else:
        pytest.skip("no reference path with x = y in this instance")


def test_sampled_alternates_telescope(ob, star):
    paths = sample_alternate_paths(ob, star, 30, seed=1)
    assert len(paths) >= 20
    assert len({tuple(p) for p in paths}) == len(paths)
    for p in paths:
        assert p != list(star.nodes) and len(set(p)) == len(p)
        dec = move_decompose(ob, p, star)
        assert dec.total_delta == dec.path_length - dec.star_length
        assert delta_bound_audit(dec).ok


def test_backward_detours_sign_law(ob, star):
    built = backward_detours(ob, star)
    assert built
    seen = 0
    for p in built:
        dec = move_decompose(ob, p, star)
        assert dec.identity_holds
        for m in dec.moves:
            if m.cls == BACKWARD:
                seen += 1
                assert m.d_num <= 0 and m.delta >= ob.psi
    assert seen


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 2**32))
def test_telescoping_for_any_seed(seed):
    ob = move_instance()
    star = truncated_critical_path(ob, rank_reference_paths(ob)[1])
    for p in sample_alternate_paths(ob, star, 5, seed=seed):
        assert move_decompose(ob, p, star).identity_holds


def test_sampler_deterministic(ob, star):
    assert sample_alternate_paths(ob, star, 10, seed=5) == sample_alternate_paths(ob, star, 10, seed=5)


def test_rejects(ob, star):
    p = list(star.nodes)
    with pytest.raises(ValueError, match="endpoints"):
        move_decompose(ob, p[:-1], star)
    with pytest.raises(ValueError, match="simple"):
        move_decompose(ob, p[:3] + p[1:], star)
    with pytest.raises(ValueError, match="edge"):
        move_decompose(ob, [p[0], p[2], p[-1]], star)


def test_short_reference_rejected():
    ob = spanner_graph()
    short = next(i for i, p in enumerate(ob.paths) if len(p.copies) < 5)
    with pytest.raises(ValueError, match="need >= 4"):
        truncated_critical_path(ob, short)


def test_experiment(ob):
    ex = move_experiment(ob, references=2, per_reference=50)
    assert ex.ok, ex.violations[:5]
    assert ex.alternates >= 100 and ex.detours and ex.backward_moves
    assert ex.min_backward_delta >= ob.psi
    assert all(r["identity"] for r in ex.records)
    assert move_experiment(ob, references=2, per_reference=50).records == ex.records
