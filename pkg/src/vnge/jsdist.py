"""Jensen-Shannon divergence and distance between graphs.

``JSdiv(G, G') = H(avg) - (H(G) + H(G')) / 2`` where ``avg`` has weights
``(W + W') / 2``, and ``JSdist = sqrt(JSdiv)``.  ``H`` is the exact entropy,
its power-iteration surrogate (``fast``) or its strength surrogate
(``tilde`` batch, ``incremental`` streaming).

Surrogate entropies are lower bounds of differing tightness, so their
combination can go negative; the divergence is then clamped to 0 and
``clamped`` is set.  A strongly negative surrogate divergence still signals a
large change (a new hub moves ``lambda_max`` far more than averaging moves it
back), so anomaly ranking uses ``magnitude = sqrt(|divergence|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import entropy_exact, entropy_hat, entropy_tilde
from .graph import DeltaGraph, Graph, average_graph
from .incremental import IncrementalState
from .spectral import DEFAULT_ORACLE_CAP


@dataclass(frozen=True)
class JsResult:
    distance: float
    divergence: float
    clamped: bool
    kind: str

    @property
    def magnitude(self) -> float:
        return math.sqrt(abs(self.divergence))


def _combine(h_avg: float, h1: float, h2: float, kind: str) -> JsResult:
    div = h_avg - 0.5 * (h1 + h2)
    return JsResult(math.sqrt(max(div, 0.0)), div, div < 0.0, kind)


def jsdist_exact(g1: Graph, g2: Graph, cap: int = DEFAULT_ORACLE_CAP) -> JsResult:
    avg = average_graph(g1, g2)
    return _combine(entropy_exact(avg, cap).value, entropy_exact(g1, cap).value,
                    entropy_exact(g2, cap).value, "exact")


def jsdist_fast(g1: Graph, g2: Graph) -> JsResult:
    """Three power iterations (``g1``, ``g2`` and their average)."""
    avg = average_graph(g1, g2)
    return _combine(entropy_hat(avg).value, entropy_hat(g1).value, entropy_hat(g2).value, "fast")


def jsdist_tilde(g1: Graph, g2: Graph) -> JsResult:
    """Batch counterpart of :func:`jsdist_incremental` (strength-based entropy)."""
    avg = average_graph(g1, g2)
    return _combine(entropy_tilde(avg).value, entropy_tilde(g1).value, entropy_tilde(g2).value, "tilde")


def jsdist_incremental(state: IncrementalState, d: DeltaGraph) -> tuple[JsResult, IncrementalState]:
    """Distance between the state's graph and its successor under ``d``.

    The half step ``G ⊕ d/2`` equals the averaged graph; it is evaluated
    without touching ``state``.  ``state`` is then advanced by ``d`` in
    place and returned.
    """
    if d.is_empty():
        return JsResult(0.0, 0.0, False, "incremental"), state
    h_now = state.entropy_tilde().value
    h_half = state.preview_entropy_tilde(d.scaled(0.5)).value
    h_next = state.update_entropy_tilde(d).value
    res = _combine(h_half, h_now, h_next, "incremental")
    return res, state


JS_KINDS = {"exact": jsdist_exact, "fast": jsdist_fast, "tilde": jsdist_tilde}


def jsdist(g1: Graph, g2: Graph, kind: str = "fast") -> JsResult:
    try:
        fn = JS_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown JS distance kind {kind!r}; expected one of {sorted(JS_KINDS)}") from None
    return fn(g1, g2)
