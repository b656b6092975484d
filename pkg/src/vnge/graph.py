"""Undirected weighted simple graphs, nodal strengths and graph composition.

Edges are stored once, keyed by the canonical ``(min, max)`` node pair, so an
edge lookup is a single dict access.  Graphs are treated as immutable; the
array views used by the numerical routines are built lazily and cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from .errors import EdgelessGraph, NegativeResultingWeight

# weights at or below this magnitude after arithmetic count as "no edge"
ZERO_WEIGHT = 1e-15

Node = Hashable
Edge = tuple


def edge_key(u, v) -> Edge:
    return (u, v) if u <= v else (v, u)


def _edge_items(edges):
    if isinstance(edges, Mapping):
        yield from edges.items()
        return
    for item in edges:
        if len(item) == 2:
            u, v = item
            w = 1.0
        else:
            u, v, w = item
        yield (u, v), w


class Graph:
    """Undirected simple graph with strictly positive edge weights.

    ``edges`` is either a mapping ``{(u, v): w}`` or an iterable of
    ``(u, v)`` / ``(u, v, w)`` tuples.  Nodes mentioned only in ``nodes`` are
    kept as isolated nodes.
    """

    def __init__(self, edges=(), nodes: Iterable[Node] = ()):
        store: dict[Edge, float] = {}
        node_set = set(nodes)
        for (u, v), w in _edge_items(edges):
            if u == v:
                raise ValueError(f"self-loop on node {u!r}")
            w = float(w)
            if not math.isfinite(w) or w <= 0.0:
                raise ValueError(f"edge ({u!r}, {v!r}) has non-positive weight {w}")
            key = edge_key(u, v)
            if key in store:
                raise ValueError(f"duplicate edge {key!r}")
            store[key] = w
            node_set.add(u)
            node_set.add(v)
        if not node_set:
            raise ValueError("a graph needs at least one node")
        self._edges = store
        self._nodes = frozenset(node_set)

    @classmethod
    def _trusted(cls, edges: dict, nodes: frozenset) -> "Graph":
        # internal constructor: caller guarantees canonical keys and valid weights
        g = cls.__new__(cls)
        g._edges = edges
        g._nodes = nodes
        return g

    @classmethod
    def complete(cls, n: int, weight: float = 1.0) -> "Graph":
        return cls({(i, j): weight for i in range(n) for j in range(i + 1, n)}, nodes=range(n))

    @property
    def nodes(self) -> frozenset:
        return self._nodes

    @property
    def edges(self) -> Mapping[Edge, float]:
        return MappingProxyType(self._edges)

    @property
    def n(self) -> int:
        return len(self._nodes)

    @property
    def m(self) -> int:
        return len(self._edges)

    def weight(self, u, v) -> float:
        return self._edges.get(edge_key(u, v), 0.0)

    def has_edge(self, u, v) -> bool:
        return edge_key(u, v) in self._edges

    def copy(self) -> "Graph":
        """Shallow copy without the cached array views (used for fair timing)."""
        return Graph._trusted(self._edges, self._nodes)

    def scaled(self, alpha: float) -> "Graph":
        if alpha <= 0:
            raise ValueError("scale factor must be positive")
        return Graph._trusted({k: w * alpha for k, w in self._edges.items()}, self._nodes)

    def relabel(self, mapping) -> "Graph":
        f = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        return Graph({(f(u), f(v)): w for (u, v), w in self._edges.items()},
                     nodes=[f(x) for x in self._nodes])

    def unweighted_edges(self) -> frozenset:
        return frozenset(self._edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        return hash((self._nodes, frozenset(self._edges.items())))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # ---- array views -------------------------------------------------

    @cached_property
    def node_order(self) -> tuple:
        try:
            return tuple(sorted(self._nodes))
        except TypeError:
            return tuple(sorted(self._nodes, key=repr))

    @cached_property
    def node_index(self) -> dict:
        return {u: i for i, u in enumerate(self.node_order)}

    @cached_property
    def edge_arrays(self):
        """``(rows, cols, weights)`` with rows/cols as positions in ``node_order``."""
        idx = self.node_index
        m = len(self._edges)
        rows = np.empty(m, dtype=np.int64)
        cols = np.empty(m, dtype=np.int64)
        for k, (u, v) in enumerate(self._edges):
            rows[k] = idx[u]
            cols[k] = idx[v]
        weights = np.fromiter(self._edges.values(), dtype=np.float64, count=m)
        return rows, cols, weights

    @cached_property
    def strength_array(self) -> np.ndarray:
        rows, cols, w = self.edge_arrays
        n = self.n
        return np.bincount(rows, weights=w, minlength=n) + np.bincount(cols, weights=w, minlength=n)

    def adjacency_sparse(self) -> sp.csr_matrix:
        rows, cols, w = self.edge_arrays
        n = self.n
        return sp.coo_matrix(
            (np.concatenate([w, w]), (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
            shape=(n, n),
        ).tocsr()

    def adjacency_dense(self) -> np.ndarray:
        rows, cols, w = self.edge_arrays
        a = np.zeros((self.n, self.n))
        a[rows, cols] = w
        a[cols, rows] = w
        return a

    def laplacian_dense(self) -> np.ndarray:
        lap = -self.adjacency_dense()
        lap[np.diag_indices(self.n)] = self.strength_array
        return lap


@dataclass(frozen=True)
class StrengthVector:
    """Nodal strengths (weighted degrees) aligned with ``Graph.node_order``."""

    nodes: tuple
    values: np.ndarray
    total: float
    s_max: float

    @property
    def c(self) -> float:
        return 1.0 / self.total

    def as_dict(self) -> dict:
        return dict(zip(self.nodes, self.values.tolist()))

    def __getitem__(self, node) -> float:
        return float(self.values[self.nodes.index(node)])


def strengths(g: Graph) -> StrengthVector:
    s = g.strength_array
    if g.m == 0:
        raise EdgelessGraph("graph has no edges; total strength is 0")
    total = math.fsum(s)
    if total <= 0.0:
        raise EdgelessGraph("graph has zero total strength")
    return StrengthVector(g.node_order, s, total, float(s.max()))


@dataclass(frozen=True)
class DeltaGraph:
    """Signed changes turning a graph ``G`` into ``G ⊕ ΔG``.

    Build it with :meth:`from_edges`; the per-node strength deltas are derived
    from the edge deltas, which keeps the two consistent.
    """

    edge_deltas: Mapping[Edge, float]
    strength_deltas: Mapping[Node, float]
    new_nodes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        derived: dict = {}
        for (u, v), dw in self.edge_deltas.items():
            if u == v:
                raise ValueError(f"self-loop delta on node {u!r}")
            derived[u] = derived.get(u, 0.0) + dw
            derived[v] = derived.get(v, 0.0) + dw
        if set(derived) != set(self.strength_deltas):
            raise ValueError("strength deltas do not cover exactly the touched nodes")
        for node, ds in derived.items():
            given = self.strength_deltas[node]
            if abs(given - ds) > 1e-12 * max(1.0, abs(ds)):
                raise ValueError(f"inconsistent strength delta at node {node!r}: {given} != {ds}")

    @classmethod
    def from_edges(cls, changes: Iterable, nodes: Iterable[Node] = ()) -> "DeltaGraph":
        """``changes`` holds ``(u, v, dw)`` triples; repeated pairs are summed."""
        edge_deltas: dict = {}
        for u, v, dw in changes:
            if u == v:
                raise ValueError(f"self-loop delta on node {u!r}")
            key = edge_key(u, v)
            edge_deltas[key] = edge_deltas.get(key, 0.0) + float(dw)
        strength_deltas: dict = {}
        for (u, v), dw in edge_deltas.items():
            strength_deltas[u] = strength_deltas.get(u, 0.0) + dw
            strength_deltas[v] = strength_deltas.get(v, 0.0) + dw
        return cls(edge_deltas, strength_deltas, frozenset(nodes))

    @classmethod
    def empty(cls) -> "DeltaGraph":
        return cls({}, {})

    @property
    def dn(self) -> int:
        return len(set(self.strength_deltas) | self.new_nodes)

    @property
    def dm(self) -> int:
        return len(self.edge_deltas)

    @property
    def total(self) -> float:
        """Change of the total strength, ``ΔS = 2 Σ Δw``."""
        return 2.0 * math.fsum(self.edge_deltas.values())

    def is_empty(self) -> bool:
        return not self.edge_deltas and not self.new_nodes

    def scaled(self, factor: float) -> "DeltaGraph":
        return DeltaGraph(
            {k: dw * factor for k, dw in self.edge_deltas.items()},
            {k: ds * factor for k, ds in self.strength_deltas.items()},
            self.new_nodes,
        )

    def negate(self) -> "DeltaGraph":
        return self.scaled(-1.0)


def apply_delta(g: Graph, d: DeltaGraph) -> Graph:
    edges = dict(g.edges)
    for key, dw in d.edge_deltas.items():
        w = edges.get(key, 0.0) + dw
        if w < -ZERO_WEIGHT:
            raise NegativeResultingWeight(f"edge {key!r} would get weight {w}")
        if w <= ZERO_WEIGHT:
            edges.pop(key, None)
        else:
            edges[key] = w
    nodes = g.nodes | d.new_nodes | frozenset(d.strength_deltas)
    return Graph._trusted(edges, nodes)


def graph_difference(g1: Graph, g2: Graph) -> DeltaGraph:
    """The delta ``d`` with ``apply_delta(g1, d) == g2`` (up to isolated nodes removed)."""
    changes = []
    e1, e2 = g1.edges, g2.edges
    for key, w in e1.items():
        w2 = e2.get(key, 0.0)
        if w2 != w:
            changes.append((key[0], key[1], w2 - w))
    for key, w2 in e2.items():
        if key not in e1:
            changes.append((key[0], key[1], w2))
    return DeltaGraph.from_edges(changes, nodes=g2.nodes - g1.nodes)


def average_graph(g1: Graph, g2: Graph) -> Graph:
    """Graph on the union of both node sets with ``W = (W1 + W2) / 2``."""
    edges = {k: 0.5 * w for k, w in g1.edges.items()}
    for k, w in g2.edges.items():
        edges[k] = edges.get(k, 0.0) + 0.5 * w
    edges = {k: w for k, w in edges.items() if w > ZERO_WEIGHT}
    return Graph._trusted(edges, g1.nodes | g2.nodes)
