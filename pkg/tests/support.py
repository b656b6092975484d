"""Shared graph builders and the acceptance-result registry."""

import numpy as np

from vnge.generators import ModelSpec, generate
from vnge.graph import Graph

# criterion number -> (passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE_RESULTS = {}


def report(number, passed, detail):
    ACCEPTANCE_RESULTS[number] = (bool(passed), detail)
    print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def k3(weight=1.0):
    return Graph([("a", "b", weight), ("b", "c", weight), ("a", "c", weight)])


def path3():
    return Graph([("a", "b"), ("b", "c")])


def star4():
    return Graph([("h", "x"), ("h", "y"), ("h", "z")])


def random_model_graph(rng, n, weighted=False, max_half_degree=10):
    """ER/BA/WS graph with an even mean degree; optional U(0.1, 1) weights."""
    model = ["er", "ba", "ws"][int(rng.integers(3))]
    d = int(rng.integers(1, min(max_half_degree, (n - 1) // 2) + 1)) * 2
    spec = ModelSpec(model, n, d, float(rng.uniform(0.05, 1.0)), int(rng.integers(2**32)))
    g = generate(spec)
    if weighted:
        w = rng.uniform(0.1, 1.0, size=g.m)
        g = Graph(dict(zip(g.edges, w.tolist())), nodes=g.nodes)
    return g


def random_weighted_graph(rng, n, p):
    """G(n, p) with U(0.1, 2) weights, built without the package generators."""
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges[(i, j)] = float(rng.uniform(0.1, 2.0))
    return Graph(edges, nodes=range(n))


def dense_laplacian(g):
    """Laplacian built entry by entry, independent of Graph's array caches."""
    order = sorted(g.nodes)
    pos = {u: i for i, u in enumerate(order)}
    L = np.zeros((len(order), len(order)))
    for (u, v), w in g.edges.items():
        i, j = pos[u], pos[v]
        L[i, j] -= w
        L[j, i] -= w
        L[i, i] += w
        L[j, j] += w
    return L


def oracle_spectrum(g):
    L = dense_laplacian(g)
    lam = np.sort(np.linalg.eigvalsh(L))[::-1] / np.trace(L)
    return np.clip(lam, 0.0, None)


def oracle_entropy(g):
    lam = oracle_spectrum(g)
    lam = lam[lam > 1e-14]
    return float(-np.sum(lam * np.log(lam)))
