"""Von Neumann graph entropy: the exact value and its linear-time surrogates.

All entropies are in nats.  Three quantities are computed here:

* ``entropy_exact``: ``-sum(l * ln l)`` over the spectrum of ``c * L``.
* ``entropy_hat``:   ``-Q ln(lambda_max)`` with ``lambda_max`` from power iteration.
* ``entropy_tilde``: ``-Q ln(2 c s_max)``, needs nodal strengths only.

``Q = 1 - c^2 (sum s_i^2 + 2 sum w_ij^2)`` is the quadratic (second-order
Taylor) surrogate shared by both approximations.  For every graph with a
connected component of at least three nodes, ``tilde <= hat <= exact``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateSpectrum
from .graph import Graph, StrengthVector, strengths
from .spectral import DEFAULT_ORACLE_CAP, full_spectrum, lambda_max

# 1 - lambda_max below this means the spectrum is a single point mass
TRIVIAL_GAP = 1e-12

KINDS = ("exact", "hat", "tilde", "quadratic")


@dataclass(frozen=True)
class EntropyReport:
    kind: str
    value: float
    q: float
    spectral_scalar: Optional[float] = None  # lambda_max (exact/hat) or 2 c s_max (tilde)
    bounds: Optional[tuple] = None
    wall_time: float = 0.0
    degenerate: bool = False


def quadratic_from_sums(sum_s2: float, sum_w2: float, total: float) -> float:
    return 1.0 - (sum_s2 + 2.0 * sum_w2) / (total * total)


def quadratic_q(g: Graph, s: Optional[StrengthVector] = None) -> float:
    """Quadratic surrogate ``Q`` in one pass over nodes and edges."""
    if s is None:
        s = strengths(g)
    w = g.edge_arrays[2]
    return quadratic_from_sums(math.fsum(s.values * s.values), math.fsum(w * w), s.total)


def vn_entropy_of(values: np.ndarray) -> float:
    """Shannon entropy of a probability vector with ``0 ln 0 = 0``."""
    pos = values[values > 0]
    return float(-np.sum(pos * np.log(pos)))


def entropy_exact(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> EntropyReport:
    t0 = time.perf_counter()
    spec = full_spectrum(g, cap=cap)
    h = vn_entropy_of(spec.positive)
    q = quadratic_q(g)
    return EntropyReport("exact", h, q, spec.lambda_max, wall_time=time.perf_counter() - t0)


def entropy_hat(g: Graph, lam_max: Optional[float] = None, eigensolver: str = "auto",
                tol: float = 1e-12, max_iter: int = 10_000) -> EntropyReport:
    """``-Q ln(lambda_max)``.  Pass ``lam_max`` to skip the eigensolve."""
    t0 = time.perf_counter()
    q = quadratic_q(g)
    if lam_max is None:
        lam_max = lambda_max(g, eigensolver, tol=tol, max_iter=max_iter)
    if lam_max >= 1.0 - TRIVIAL_GAP:
        raise DegenerateSpectrum(
            f"lambda_max = {lam_max!r}: no connected component with 3+ nodes, entropy is 0"
        )
    value = -q * math.log(lam_max)
    return EntropyReport("hat", value, q, lam_max, wall_time=time.perf_counter() - t0)


def tilde_from_parts(q: float, c: float, s_max: float) -> tuple[float, float, bool]:
    """Returns ``(value, 2 c s_max, degenerate)``; degenerate values are clamped to 0."""
    arg = 2.0 * c * s_max
    if arg >= 1.0 - TRIVIAL_GAP:
        return 0.0, arg, True
    return -q * math.log(arg), arg, False


def entropy_tilde(g: Graph) -> EntropyReport:
    """``-Q ln(2 c s_max)``.

    ``2 c s_max`` reaches 1 exactly when every edge touches the busiest node
    (stars, single edges, the 3-node path).  The value is then clamped to 0
    and ``degenerate`` is set instead of raising, so streams keep running.
    """
    t0 = time.perf_counter()
    s = strengths(g)
    q = quadratic_q(g, s)
    value, arg, degenerate = tilde_from_parts(q, s.c, s.s_max)
    return EntropyReport("tilde", value, q, arg, wall_time=time.perf_counter() - t0,
                         degenerate=degenerate)


def entropy_quadratic(g: Graph) -> EntropyReport:
    t0 = time.perf_counter()
    q = quadratic_q(g)
    return EntropyReport("quadratic", q, q, wall_time=time.perf_counter() - t0)


def entropy_bounds(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> tuple[float, float]:
    """Lower and upper bound on the exact entropy from the extreme positive eigenvalues.

    ``-Q ln(l_max) / (1 - l_min) <= H <= -Q ln(l_min) / (1 - l_max)``,
    both tight for complete graphs with identical weights.
    """
    spec = full_spectrum(g, cap=cap)
    lam_max, lam_min = spec.lambda_max, spec.lambda_min_positive
    if lam_max >= 1.0 - TRIVIAL_GAP:
        raise DegenerateSpectrum(f"lambda_max = {lam_max!r}; bounds need lambda_max < 1")
    q = quadratic_q(g)
    lower = -q * math.log(lam_max) / (1.0 - lam_min)
    upper = -q * math.log(lam_min) / (1.0 - lam_max)
    return lower, upper


def entropy(g: Graph, kind: str, **kwargs) -> EntropyReport:
    if kind == "exact":
        return entropy_exact(g, **kwargs)
    if kind == "hat":
        return entropy_hat(g, **kwargs)
    if kind == "tilde":
        return entropy_tilde(g)
    if kind == "quadratic":
        return entropy_quadratic(g)
    raise ValueError(f"unknown entropy kind {kind!r}; expected one of {KINDS}")
