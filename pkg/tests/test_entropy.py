import math

import pytest
from hypothesis import given, settings, strategies as st

from support import k3, oracle_entropy, path3, random_weighted_graph, star4
from vnge.entropy import (entropy, entropy_bounds, entropy_exact, entropy_hat, entropy_quadratic,
                          entropy_tilde, quadratic_q)
from vnge.errors import DegenerateSpectrum
from vnge.graph import Graph

# closed forms, derived independently with sympy/mpmath
PATH_H = 0.5623351446188083
PATH_HAT = 0.10788077716941582
PATH_LOWER = 0.14384103622589443
PATH_UPPER = 2.0794415416798357


def test_complete_graph_entropy():
    assert entropy_exact(Graph.complete(10)).value == pytest.approx(math.log(9), abs=1e-12)


def test_single_edge_entropy_is_zero():
    g = Graph([(0, 1, 4.0)])
    assert entropy_exact(g).value == 0.0
    assert quadratic_q(g) == 0.0


def test_path_entropy():
    assert entropy_exact(path3()).value == pytest.approx(PATH_H, abs=1e-12)


def test_quadratic_values():
    assert quadratic_q(k3()) == pytest.approx(0.5, abs=1e-15)
    assert quadratic_q(path3()) == 0.375
    for n in (4, 17):
        assert quadratic_q(Graph.complete(n)) == pytest.approx(1 - 1 / (n - 1), abs=1e-14)


def test_hat_values():
    assert entropy_hat(k3()).value == pytest.approx(0.5 * math.log(2), abs=1e-12)
    assert entropy_hat(path3()).value == pytest.approx(PATH_HAT, abs=1e-12)
    assert entropy_hat(Graph.complete(101)).value == pytest.approx(0.99 * math.log(100), rel=1e-10)


def test_hat_degenerate():
    with pytest.raises(DegenerateSpectrum):
        entropy_hat(Graph([(0, 1)]))


def test_tilde_values():
    assert entropy_tilde(k3()).value == pytest.approx(-0.5 * math.log(2 / 3), abs=1e-12)
    assert entropy_tilde(Graph.complete(10)).value == pytest.approx(8 / 9 * math.log(5), abs=1e-12)


def test_tilde_degenerate_path():
    r = entropy_tilde(path3())
    assert r.value == 0.0 and r.degenerate
    assert r.spectral_scalar == pytest.approx(1.0)


def test_bounds_path():
    lower, upper = entropy_bounds(path3())
    assert lower == pytest.approx(PATH_LOWER, abs=1e-12)
    assert upper == pytest.approx(PATH_UPPER, abs=1e-12)
    assert lower <= PATH_H <= upper


def test_bounds_exact_for_complete_weighted():
    lower, upper = entropy_bounds(Graph.complete(7, weight=2.5))
    assert lower == pytest.approx(math.log(6), abs=1e-12)
    assert upper == pytest.approx(math.log(6), abs=1e-12)


def test_bounds_er():
    from vnge.generators import ModelSpec, generate
    g = generate(ModelSpec("er", 500, 50, seed=1))
    lower, upper = entropy_bounds(g)
    h = entropy_exact(g).value
    assert lower <= h <= upper


def test_dispatch():
    assert entropy(k3(), "quadratic").value == entropy_quadratic(k3()).value
    with pytest.raises(ValueError):
        entropy(k3(), "renyi")


@given(st.integers(0, 10_000), st.integers(4, 30), st.floats(0.2, 1.0))
@settings(max_examples=60, deadline=None)
def test_ordering_and_oracle(seed, n, p):
    import numpy as np
    g = random_weighted_graph(np.random.default_rng(seed), n, p)
    if g.m < 3:
        return
    h = entropy_exact(g).value
    assert h == pytest.approx(oracle_entropy(g), abs=1e-10)
    # strength-based proxy never exceeds the eigenvalue-based one, which never exceeds H
    assert entropy_tilde(g).value <= h + 1e-9
    try:
        hat = entropy_hat(g).value
    except DegenerateSpectrum:
        return
    assert entropy_tilde(g).value <= hat + 1e-9 <= h + 2e-9


@given(st.integers(0, 10_000), st.floats(0.1, 10.0))
@settings(max_examples=30, deadline=None)
def test_scale_invariance(seed, alpha):
    import numpy as np
    g = random_weighted_graph(np.random.default_rng(seed), 12, 0.5)
    if g.m == 0:
        return
    h1, h2 = entropy_exact(g).value, entropy_exact(g.scaled(alpha)).value
    assert h1 == pytest.approx(h2, abs=1e-10)
    assert quadratic_q(g) == pytest.approx(quadratic_q(g.scaled(alpha)), abs=1e-12)
