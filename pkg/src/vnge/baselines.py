"""Baseline graph dissimilarity scores used for comparison.

The structural scores (GED, VEO, degree-distribution distances) look at the
unweighted graph only.  The lambda distance compares the top ``k``
eigenvalues of the weight or Laplacian matrix.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import MatrixTooLarge
from .graph import Graph
from .spectral import DEFAULT_ORACLE_CAP

METHODS = (
    "lambda_adj", "lambda_lap", "ged", "veo",
    "cos_deg", "bhattacharyya_deg", "hellinger_deg",
    "js_fast", "js_inc", "js_exact",
)


@dataclass(frozen=True)
class DissimilarityScore:
    method: str
    value: float


def top_eigenvalues(g: Graph, k: int, matrix: str = "laplacian", order: str = "magnitude",
                    cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    """The ``k`` leading eigenvalues, zero-padded when ``g`` has fewer than ``k`` nodes.

    Laplacian eigenvalues are nonnegative and sorted by value.  Adjacency
    spectra can be negative, so ``order`` picks largest ``"magnitude"``
    (default) or largest ``"value"``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n > cap:
        raise MatrixTooLarge(f"dense eigensolve on n={g.n} exceeds the oracle cap of {cap}")
    if matrix == "laplacian":
        vals = scipy.linalg.eigvalsh(g.laplacian_dense(), check_finite=False)[::-1]
    elif matrix == "adjacency":
        vals = scipy.linalg.eigvalsh(g.adjacency_dense(), check_finite=False)
        if order == "magnitude":
            vals = vals[np.argsort(-np.abs(vals), kind="stable")]
        elif order == "value":
            vals = vals[::-1]
        else:
            raise ValueError(f"unknown eigenvalue order {order!r}")
    else:
        raise ValueError(f"unknown matrix {matrix!r}; expected 'laplacian' or 'adjacency'")
    out = np.zeros(k)
    take = min(k, len(vals))
    out[:take] = vals[:take]
    return out


def lambda_distance(g1: Graph, g2: Graph, k: int = 6, matrix: str = "laplacian",
                    order: str = "magnitude", cap: int = DEFAULT_ORACLE_CAP) -> float:
    a = top_eigenvalues(g1, k, matrix, order, cap)
    b = top_eigenvalues(g2, k, matrix, order, cap)
    return float(np.linalg.norm(a - b))


def ged(g1: Graph, g2: Graph) -> int:
    """Node and edge insertions/deletions turning ``g1`` into ``g2`` (weights ignored)."""
    return len(g1.nodes ^ g2.nodes) + len(g1.unweighted_edges() ^ g2.unweighted_edges())


def veo(g1: Graph, g2: Graph) -> float:
    """Vertex/edge overlap dissimilarity in ``[0, 1]``."""
    e1, e2 = g1.unweighted_edges(), g2.unweighted_edges()
    overlap = len(g1.nodes & g2.nodes) + len(e1 & e2)
    size = g1.n + g2.n + len(e1) + len(e2)
    return 1.0 - 2.0 * overlap / size


def degree_distribution(g: Graph) -> Counter:
    deg = Counter({u: 0 for u in g.nodes})
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return Counter(deg.values())


def _aligned_distributions(g1: Graph, g2: Graph):
    h1, h2 = degree_distribution(g1), degree_distribution(g2)
    support = sorted(set(h1) | set(h2))
    p = np.array([h1.get(d, 0) for d in support], dtype=float)
    q = np.array([h2.get(d, 0) for d in support], dtype=float)
    return p / p.sum(), q / q.sum()


def degree_distribution_distance(g1: Graph, g2: Graph, kind: str = "hellinger") -> float:
    """Distance between unweighted degree histograms.

    Bhattacharyya returns ``inf`` when the two histograms share no support.
    """
    p, q = _aligned_distributions(g1, g2)
    if kind == "cosine":
        return float(max(0.0, 1.0 - p @ q / (np.linalg.norm(p) * np.linalg.norm(q))))
    bc = min(1.0, float(np.sum(np.sqrt(p * q))))
    if kind == "bhattacharyya":
        return math.inf if bc == 0.0 else max(0.0, -math.log(bc))
    if kind == "hellinger":
        return math.sqrt(max(0.0, 1.0 - bc))
    raise ValueError(f"unknown degree distance {kind!r}")


def dissimilarity(method: str, g1: Graph, g2: Graph, k: int = 6,
                  cap: int = DEFAULT_ORACLE_CAP) -> DissimilarityScore:
    """Score one consecutive pair with any method except ``js_inc`` (which needs a stream)."""
    from .jsdist import jsdist_exact, jsdist_fast

    if method == "lambda_adj":
        value = lambda_distance(g1, g2, k, "adjacency", cap=cap)
    elif method == "lambda_lap":
        value = lambda_distance(g1, g2, k, "laplacian", cap=cap)
    elif method == "ged":
        value = float(ged(g1, g2))
    elif method == "veo":
        value = veo(g1, g2)
    elif method == "cos_deg":
        value = degree_distribution_distance(g1, g2, "cosine")
    elif method == "bhattacharyya_deg":
        value = degree_distribution_distance(g1, g2, "bhattacharyya")
    elif method == "hellinger_deg":
        value = degree_distribution_distance(g1, g2, "hellinger")
    elif method == "js_fast":
        value = jsdist_fast(g1, g2).magnitude
    elif method == "js_exact":
        value = jsdist_exact(g1, g2, cap).magnitude
    elif method == "js_inc":
        raise ValueError("js_inc scores a change stream; use jsdist.jsdist_incremental")
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return DissimilarityScore(method, value)
