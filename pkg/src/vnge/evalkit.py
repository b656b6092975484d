"""Evaluation metrics: approximation error, speed-up, temporal difference scores,
correlations and detection rates.

Index conventions: score series are 0-based lists.  ``scores[t]`` is the
dissimilarity between graph ``t`` and graph ``t + 1``.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateSeries, SeriesTooShort


def sae(h_exact: float, h_approx: float, n: int) -> float:
    """Approximation error scaled by ``ln n``."""
    return (h_exact - h_approx) / math.log(n)


def ctrr(time_exact: float, time_approx: float) -> float:
    """Computation-time reduction ratio relative to the exact computation."""
    if time_exact <= 0:
        raise ValueError("exact time must be positive")
    return (time_exact - time_approx) / time_exact


def median_time(fn, make_input, runs: int = 5) -> float:
    """Median wall time of ``fn(make_input())`` over ``runs`` calls.

    Inputs are prepared before the clock starts; the first call is an
    untimed warm-up.
    """
    fn(make_input())
    times = []
    for _ in range(runs):
        arg = make_input()
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def tds(scores: Sequence[float]) -> list[float]:
    """Temporal difference score of each of the ``len(scores) + 1`` graphs.

    A graph scores the mean dissimilarity to its two neighbours; the first
    and last graphs have one neighbour only.
    """
    theta = list(scores)
    if len(theta) < 1:
        raise SeriesTooShort("TDS needs at least two graphs (one pairwise score)")
    out = [theta[0]]
    out.extend(0.5 * (theta[t - 1] + theta[t]) for t in range(1, len(theta)))
    out.append(theta[-1])
    return out


def bifurcation_points(series: Sequence[float]) -> list[int]:
    """Interior strict local minima; a flat bottom reports its left-most index.

    The first and last positions are never reported.
    """
    x = list(series)
    found = []
    i = 1
    while i < len(x) - 1:
        j = i
        while j + 1 < len(x) - 1 and x[j + 1] == x[i]:
            j += 1
        if x[i - 1] > x[i] and x[j + 1] > x[i]:
            found.append(i)
        i = j + 1
    return found


def correlate(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Pearson and Spearman (average ranks for ties) correlation."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("series must be one-dimensional and of equal length")
    if len(a) < 3:
        raise SeriesTooShort("correlation needs at least 3 points")
    return _pearson(a, b), _pearson(rankdata(a), rankdata(b))


def _pearson(a, b) -> float:
    da, db = a - a.mean(), b - b.mean()
    na, nb = np.sqrt(da @ da), np.sqrt(db @ db)
    if na == 0.0 or nb == 0.0:
        raise DegenerateSeries("a series has zero variance")
    return float(np.clip(da @ db / (na * nb), -1.0, 1.0))


def finite_scores(scores: Sequence[float]) -> list[float]:
    """Replace ``inf`` by (largest finite score + 1) so rankings stay well defined."""
    finite = [s for s in scores if math.isfinite(s)]
    cap = (max(finite) if finite else 0.0) + 1.0
    return [s if math.isfinite(s) else cap for s in scores]


def ranking(scores: Sequence[float]) -> list[int]:
    """Indices by descending score; ties go to the earlier index."""
    s = finite_scores(scores)
    return sorted(range(len(s)), key=lambda i: (-s[i], i))


def detection_rate(trials, top_k: int = 2) -> float:
    """Fraction of ``(scores, true_index)`` trials whose true index ranks in the top ``k``."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    trials = list(trials)
    if not trials:
        return 0.0
    hits = sum(true_index in ranking(scores)[:top_k] for scores, true_index in trials)
    return hits / len(trials)


@dataclass
class SeriesAnalysis:
    scores: list
    tds: list
    ranking: list
    bifurcations: list
    correlations: Optional[tuple] = None


def analyze_series(scores: Sequence[float], reference: Optional[Sequence[float]] = None) -> SeriesAnalysis:
    s = finite_scores(scores)
    t = tds(s)
    corr = correlate(s, reference) if reference is not None else None
    return SeriesAnalysis(list(scores), t, ranking(s), bifurcation_points(t), corr)
