import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from support import k3, path3, star4
from vnge.entropy import entropy_tilde, quadratic_q
from vnge.errors import NegativeResultingWeight, StreamStepError, TotalWeightNonPositive
from vnge.generators import ModelSpec, generate
from vnge.graph import DeltaGraph, Graph, apply_delta
from vnge.incremental import EXACT_SMAX, PAPER_FAITHFUL, IncrementalState, init_state, stream_run


def test_init_values():
    s = init_state(k3())
    assert s.q == pytest.approx(0.5, abs=1e-15)
    assert s.c == pytest.approx(1 / 6)
    assert s.s_max == 2.0
    e = init_state(Graph([(0, 1)]))
    assert (e.q, e.c, e.s_max) == (0.0, 0.5, 1.0)


def test_init_matches_batch():
    g = generate(ModelSpec("er", 100, 8, seed=3))
    assert init_state(g).q == quadratic_q(g)


def test_path_plus_edge_is_triangle():
    s = init_state(path3())
    q, c = s.update_q(DeltaGraph.from_edges([("a", "c", 1.0)]))
    assert q == pytest.approx(quadratic_q(k3()), abs=1e-12)
    assert c == pytest.approx(1 / 6, abs=1e-15)


def test_triangle_minus_edge_is_path():
    s = init_state(k3())
    q, _ = s.update_q(DeltaGraph.from_edges([("b", "c", -1.0)]))
    assert q == pytest.approx(0.375, abs=1e-12)


def test_empty_delta_changes_nothing():
    s = init_state(star4())
    before = (s.q, s.c, s.s_max)
    s.update_q(DeltaGraph.empty())
    assert (s.q, s.c, s.s_max) == before


def test_tilde_update_matches_triangle():
    s = init_state(path3())
    r = s.update_entropy_tilde(DeltaGraph.from_edges([("a", "c", 1.0)]))
    assert r.value == pytest.approx(-0.5 * math.log(2 / 3), abs=1e-12)


def test_smax_modes_on_star():
    d = DeltaGraph.from_edges([("h", "z", -1.0)])
    exact = init_state(star4(), EXACT_SMAX)
    faithful = init_state(star4(), PAPER_FAITHFUL)
    exact.update_q(d)
    faithful.update_q(d)
    assert exact.s_max == 2.0
    assert faithful.s_max == 3.0


def test_rejects_invalid_deltas():
    s = init_state(path3())
    with pytest.raises(NegativeResultingWeight):
        s.update_q(DeltaGraph.from_edges([("a", "b", -1.5)]))
    with pytest.raises(TotalWeightNonPositive):
        s.update_q(DeltaGraph.from_edges([("a", "b", -1.0), ("b", "c", -1.0)]))
    # failed updates leave the state untouched
    assert s.q == 0.375


def test_preview_does_not_mutate():
    s = init_state(path3())
    r = s.preview_entropy_tilde(DeltaGraph.from_edges([("a", "c", 1.0)]))
    assert r.value == pytest.approx(entropy_tilde(k3()).value, abs=1e-12)
    assert s.q == 0.375 and len(s.weights) == 2


def test_stream_empty_and_k3_to_k4():
    assert stream_run(k3(), []) == []
    deltas = [DeltaGraph.from_edges([(x, "d", 1.0)]) for x in "abc"]
    reports = stream_run(k3(), deltas)
    assert reports[-1].value == pytest.approx(entropy_tilde(Graph.complete(4)).value, abs=1e-12)


def test_stream_reports_failing_step():
    deltas = [DeltaGraph.from_edges([("a", "d", 1.0)]), DeltaGraph.from_edges([("b", "c", -5.0)])]
    with pytest.raises(StreamStepError) as info:
        stream_run(k3(), deltas)
    assert info.value.step == 1


def test_rebaseline_keeps_values():
    g = generate(ModelSpec("ba", 80, 4, seed=2))
    s = init_state(g)
    q = s.q
    s.rebaseline()
    assert s.q == pytest.approx(q, abs=1e-14)


def random_delta(rng, state, n, max_edges=4):
    changes = []
    for _ in range(int(rng.integers(1, max_edges + 1))):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        key = (min(u, v), max(u, v))
        w = state.get(key, 0.0)
        roll = rng.random()
        if w > 0 and roll < 0.3:
            changes.append((u, v, -w))
        elif w > 0 and roll < 0.6:
            changes.append((u, v, float(rng.uniform(-0.9, 1.0)) * w))
        else:
            changes.append((u, v, float(rng.uniform(0.1, 2.0))))
    return DeltaGraph.from_edges(changes)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_random_stream_tracks_batch(seed):
    rng = np.random.default_rng(seed)
    g = generate(ModelSpec("er", 40, 6, seed=seed % 1000))
    s = init_state(g)
    for _ in range(60):
        d = random_delta(rng, g.edges, 40)
        try:
            g_next = apply_delta(g, d)
        except NegativeResultingWeight:
            continue
        if g_next.m == 0:
            continue
        s.update_q(d)
        g = g_next
        assert s.q == pytest.approx(quadratic_q(g), rel=1e-10, abs=1e-12)
        assert s.entropy_tilde().value == pytest.approx(entropy_tilde(g).value, abs=1e-7)
