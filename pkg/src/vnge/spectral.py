"""Eigenvalues of the trace-normalized Laplacian ``c * L``.

``full_spectrum`` is the dense O(n^3) oracle; ``lambda_max_power`` is the
O(n + m) per-iteration power method that only needs the largest eigenvalue.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg as sla

from .errors import ConvergenceFailure, EdgelessGraph, MatrixTooLarge
from .graph import Graph

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 20_000
EIGENSOLVERS = ("auto", "power", "lanczos")
# eigenvalues at or below this fraction of lambda_max are treated as exact zeros
ZERO_EIG_RTOL = 1e-12
START_SEED = 20_240_917


@dataclass(frozen=True)
class EigenSpectrum:
    values: np.ndarray  # descending, clamped to >= 0
    n_plus: int
    lambda_max: float
    lambda_min_positive: float

    @property
    def positive(self) -> np.ndarray:
        return self.values[: self.n_plus]


def _total_strength(g: Graph) -> float:
    if g.m == 0:
        raise EdgelessGraph("graph has no edges")
    return math.fsum(g.strength_array)


def full_spectrum(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> EigenSpectrum:
    if g.n > cap:
        raise MatrixTooLarge(f"dense eigensolve on n={g.n} exceeds the oracle cap of {cap}")
    total = _total_strength(g)
    mu = scipy.linalg.eigvalsh(g.laplacian_dense(), overwrite_a=True, check_finite=False)
    lam = mu[::-1] / total
    lam_max = float(lam[0])
    lam[lam <= ZERO_EIG_RTOL * lam_max] = 0.0
    n_plus = int(np.count_nonzero(lam))
    return EigenSpectrum(lam, n_plus, lam_max, float(lam[n_plus - 1]))


def start_vector(n: int) -> np.ndarray:
    """Fixed pseudo-random unit vector.

    Patterned starts can be exactly orthogonal to the top eigenvector of a
    symmetric graph (``(1, 1.1, 1.2)`` against ``(1, -2, 1)`` on a 3-node
    path), after which the iteration settles on a smaller eigenvalue.
    """
    x = np.random.default_rng(START_SEED).uniform(0.5, 1.5, size=n)
    return x / np.linalg.norm(x)


def lambda_max_power(g: Graph, tol: float = 1e-12, max_iter: int = 10_000) -> tuple[float, int]:
    """Largest eigenvalue of ``c * L`` by power iteration.

    ``L`` is positive semidefinite, so the eigenvalue of largest magnitude is
    the largest one and the plain iteration needs no shift.  ``L x`` is formed
    as ``s * x - W x`` with the sparse weight matrix; ``L`` is never built.
    Stops when the Rayleigh quotient changes by less than ``tol`` (relative).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    value, it, _ = _power(g, tol, max_iter)
    if it is None:
        raise ConvergenceFailure(
            f"Rayleigh quotient still moving by more than {tol:g} (relative) after {max_iter} iterations"
        )
    return value, it


def _laplacian_operator(g: Graph):
    s = g.strength_array
    w = g.adjacency_sparse()
    return lambda x: s * x - w @ x


def _power(g: Graph, tol: float, max_iter: int):
    """Returns ``(estimate, iterations or None if unconverged, last iterate)``."""
    total = _total_strength(g)
    matvec = _laplacian_operator(g)
    x = start_vector(g.n)
    rho_prev = None
    rho = 0.0
    for it in range(1, max_iter + 1):
        y = matvec(x)
        rho = float(x @ y)
        if rho_prev is not None and abs(rho - rho_prev) <= tol * abs(rho):
            return rho / total, it, x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            raise ConvergenceFailure("power iteration collapsed to the null space")
        x = y / norm
        rho_prev = rho
    return rho / total, None, x


def _lanczos(g: Graph, v0=None) -> float:
    total = _total_strength(g)
    if g.n < 3:
        return float(full_spectrum(g).lambda_max)
    matvec = _laplacian_operator(g)
    op = sla.LinearOperator((g.n, g.n), matvec=matvec, dtype=np.float64)
    vals = sla.eigsh(op, k=1, which="LA", v0=v0, tol=0.0, return_eigenvectors=False)
    return float(vals[0]) / total


def lambda_max(g: Graph, method: str = "auto", tol: float = 1e-12, max_iter: int = 10_000) -> float:
    """Largest eigenvalue of ``c * L`` with a choice of sparse solver.

    ``auto`` runs the power iteration and, if it has not settled after
    ``max_iter`` steps (a near-degenerate top of the spectrum, e.g. two hubs
    of almost equal strength or a ring lattice), finishes with ARPACK's
    Lanczos started from the last power iterate.
    """
    if method == "power":
        return lambda_max_power(g, tol, max_iter)[0]
    if method == "lanczos":
        return _lanczos(g)
    if method != "auto":
        raise ValueError(f"unknown eigensolver {method!r}; expected one of {EIGENSOLVERS}")
    value, it, x = _power(g, tol, max_iter)
    if it is not None:
        return value
    log.info("power iteration unconverged after %d steps on n=%d; switching to Lanczos", max_iter, g.n)
    return _lanczos(g, v0=x)
