"""Fast approximations of the von Neumann entropy of graphs, their incremental
updates and the Jensen-Shannon distance built on them."""

from .entropy import (EntropyReport, entropy, entropy_bounds, entropy_exact, entropy_hat,
                      entropy_quadratic, entropy_tilde, quadratic_q)
from .errors import VngeError
from .graph import DeltaGraph, Graph, apply_delta, average_graph, graph_difference, strengths
from .incremental import EXACT_SMAX, PAPER_FAITHFUL, IncrementalState
from .jsdist import JsResult, jsdist, jsdist_exact, jsdist_fast, jsdist_incremental, jsdist_tilde
from .spectral import full_spectrum, lambda_max, lambda_max_power

__version__ = "0.1.0"

__all__ = [
    "DeltaGraph", "EXACT_SMAX", "EntropyReport", "Graph", "IncrementalState", "JsResult",
    "PAPER_FAITHFUL", "VngeError", "apply_delta", "average_graph", "entropy", "entropy_bounds",
    "entropy_exact", "entropy_hat", "entropy_quadratic", "entropy_tilde", "full_spectrum",
    "graph_difference", "jsdist", "jsdist_exact", "jsdist_fast", "jsdist_incremental",
    "jsdist_tilde", "lambda_max", "lambda_max_power", "quadratic_q", "strengths",
]
