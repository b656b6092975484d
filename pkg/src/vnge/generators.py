"""Seeded random-graph models and the DoS-style anomaly injector.

Randomness comes from numpy's PCG64.  A user seed is expanded through
``SeedSequence(seed, spawn_key=(stream,))`` so that graph generation, anomaly
injection and edge churn draw from independent streams even when they share
the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .graph import Graph, edge_key

STREAM_GENERATE = 0
STREAM_INJECT = 1
STREAM_CHURN = 2
STREAM_EXPERIMENT = 3

MODELS = ("er", "ba", "ws")


def rng_for(seed: int, stream: int, *extra: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream, *extra))))


@dataclass(frozen=True)
class ModelSpec:
    model: str
    n: int
    avg_degree: float
    p_ws: float = 0.0
    seed: int = 0

    def validate(self):
        if self.model not in MODELS:
            raise InvalidSpec(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 3:
            raise InvalidSpec("need n >= 3")
        if not (1 <= self.avg_degree <= self.n - 1):
            raise InvalidSpec(f"average degree must lie in [1, n-1], got {self.avg_degree}")
        if self.model in ("ba", "ws"):
            half = self.avg_degree / 2
            if half != int(half):
                raise InvalidSpec(f"{self.model} needs an even average degree, got {self.avg_degree}")
        if self.model == "ws" and not (0.0 <= self.p_ws <= 1.0):
            raise InvalidSpec("rewiring probability must lie in [0, 1]")

    @property
    def p_er(self) -> float:
        return self.avg_degree / (self.n - 1)


def _from_pairs(rows, cols, n) -> Graph:
    keys = zip(rows.tolist(), cols.tolist())
    return Graph._trusted(dict.fromkeys(keys, 1.0), frozenset(range(n)))


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p): draw the edge count from the binomial law, then that many distinct pairs."""
    total = n * (n - 1) // 2
    k = total if p >= 1.0 else int(rng.binomial(total, p))
    idx = np.arange(total) if k == total else np.sort(rng.choice(total, size=k, replace=False))
    # row i owns linear indices [offset[i], offset[i + 1]) of the strict upper triangle
    i = np.arange(n)
    offset = i * (2 * n - i - 1) // 2
    rows = np.searchsorted(offset, idx, side="right") - 1
    cols = idx - offset[rows] + rows + 1
    return _from_pairs(rows, cols, n)


def barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Preferential attachment of ``m`` edges per new node onto a ``K_{m+1}`` nucleus."""
    edges = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    # every node appears once per incident edge, so uniform picks are degree-proportional
    ends = [x for e in edges for x in e]
    for v in range(m + 1, n):
        targets = set()
        while len(targets) < m:
            targets.add(ends[int(rng.integers(len(ends)))])
        for t in sorted(targets):
            edges.append((t, v))
            ends.append(t)
            ends.append(v)
    return Graph._trusted(dict.fromkeys(edges, 1.0), frozenset(range(n)))


def watts_strogatz(n: int, k: int, p: float, rng: np.random.Generator) -> Graph:
    """Ring lattice of degree ``k`` whose edges are rewired independently with probability ``p``.

    A rewired edge ``(u, v)`` keeps ``u`` and moves its far end to a node drawn
    uniformly from the non-neighbours of ``u``.
    """
    half = k // 2
    adj = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, half + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    if p > 0.0:
        for j in range(1, half + 1):
            for u in range(n):
                v = (u + j) % n
                if v not in adj[u] or rng.random() >= p:
                    continue
                if len(adj[u]) >= n - 1:
                    continue
                while True:
                    w = int(rng.integers(n))
                    if w != u and w not in adj[u]:
                        break
                adj[u].discard(v)
                adj[v].discard(u)
                adj[u].add(w)
                adj[w].add(u)
    edges = {(u, v): 1.0 for u in range(n) for v in adj[u] if u < v}
    return Graph._trusted(edges, frozenset(range(n)))


def generate(spec: ModelSpec) -> Graph:
    spec.validate()
    rng = rng_for(spec.seed, STREAM_GENERATE)
    if spec.model == "er":
        return erdos_renyi(spec.n, spec.p_er, rng)
    if spec.model == "ba":
        return barabasi_albert(spec.n, int(spec.avg_degree) // 2, rng)
    return watts_strogatz(spec.n, int(spec.avg_degree), spec.p_ws, rng)


def inject_dos(g: Graph, x_percent: float, seed: int) -> tuple[Graph, object]:
    """Connect ``ceil(x% of n)`` distinct random nodes to one random target node.

    Already existing attacker-target edges are skipped.  Returns the new graph
    and the target.
    """
    if not (0.0 < x_percent <= 100.0):
        raise InvalidSpec(f"attack fraction must lie in (0, 100], got {x_percent}")
    rng = rng_for(seed, STREAM_INJECT)
    order = g.node_order
    target = order[int(rng.integers(len(order)))]
    others = [u for u in order if u != target]
    count = min(len(others), math.ceil(x_percent * g.n / 100.0))
    picked = rng.choice(len(others), size=count, replace=False)
    edges = dict(g.edges)
    for k in picked.tolist():
        edges.setdefault(edge_key(others[k], target), 1.0)
    return Graph._trusted(edges, g.nodes), target


def edge_churn(g: Graph, fraction: float, rng: np.random.Generator) -> Graph:
    """Remove ``round(fraction * m)`` random edges and add as many new unit-weight ones."""
    k = int(round(fraction * g.m))
    if k == 0:
        return g
    keys = list(g.edges)
    drop = rng.choice(len(keys), size=k, replace=False)
    edges = dict(g.edges)
    for i in drop.tolist():
        del edges[keys[i]]
    order = g.node_order
    n = len(order)
    added = 0
    while added < k:
        a, b = rng.integers(n, size=2).tolist()
        if a == b:
            continue
        key = edge_key(order[a], order[b])
        if key in edges or key in g.edges:
            continue
        edges[key] = 1.0
        added += 1
    return Graph._trusted(edges, g.nodes)
