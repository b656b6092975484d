import numpy as np
import pytest

from support import k3, oracle_spectrum, star4
from vnge.errors import ConvergenceFailure, EdgelessGraph, MatrixTooLarge
from vnge.generators import ModelSpec, erdos_renyi, generate, rng_for
from vnge.graph import Graph
from vnge.spectral import full_spectrum, lambda_max, lambda_max_power


def test_triangle_spectrum():
    spec = full_spectrum(k3())
    assert np.allclose(spec.values, [0.5, 0.5, 0.0], atol=1e-15)
    assert spec.n_plus == 2


def test_single_edge_spectrum():
    assert np.allclose(full_spectrum(Graph([(0, 1, 2.5)])).values, [1.0, 0.0])


def test_star_spectrum():
    assert np.allclose(full_spectrum(star4()).values, [4 / 6, 1 / 6, 1 / 6, 0.0], atol=1e-15)


def test_spectrum_sums_to_one():
    g = generate(ModelSpec("ba", 120, 4, seed=5))
    assert full_spectrum(g).values.sum() == pytest.approx(1.0, abs=1e-12)


def test_cap_and_edgeless():
    with pytest.raises(MatrixTooLarge):
        full_spectrum(k3(), cap=2)
    with pytest.raises(EdgelessGraph):
        full_spectrum(Graph(nodes=[0, 1]))


@pytest.mark.parametrize("g, expected", [(k3(), 0.5), (star4(), 2 / 3)])
def test_power_small(g, expected):
    value, iters = lambda_max_power(g)
    assert value == pytest.approx(expected, rel=1e-10)
    assert iters >= 2


def test_power_matches_oracle_on_er():
    g = erdos_renyi(200, 0.1, rng_for(7, 0))
    value, _ = lambda_max_power(g)
    assert value == pytest.approx(oracle_spectrum(g)[0], rel=1e-6)


def test_power_reports_nonconvergence():
    g = generate(ModelSpec("ws", 400, 6, 0.0, seed=1))  # ring lattice: clustered top eigenvalues
    with pytest.raises(ConvergenceFailure):
        lambda_max_power(g, max_iter=50)


@pytest.mark.parametrize("method", ["auto", "lanczos"])
def test_lambda_max_solvers_on_ring(method):
    g = generate(ModelSpec("ws", 400, 6, 0.0, seed=1))
    assert lambda_max(g, method) == pytest.approx(oracle_spectrum(g)[0], rel=1e-9)


def test_unknown_solver():
    with pytest.raises(ValueError):
        lambda_max(k3(), "qr")


def _components(g):
    parent = {u: u for u in g.nodes}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for u, v in g.edges:
        parent[find(u)] = find(v)
    return len({find(u) for u in g.nodes})


@pytest.mark.parametrize("seed", range(8))
def test_spectrum_invariants(seed):
    from support import random_weighted_graph
    rng = np.random.default_rng(seed)
    g = random_weighted_graph(rng, int(rng.integers(5, 60)), float(rng.uniform(0.02, 0.4)))
    if g.m == 0:
        return
    spec = full_spectrum(g)
    s = g.strength_array
    c = 1.0 / s.sum()
    assert spec.lambda_max <= 2 * c * s.max() * (1 + 1e-12)
    assert g.n / (g.n - 1) * c * s.max() <= spec.lambda_max * (1 + 1e-12)
    assert spec.n_plus == g.n - _components(g)
