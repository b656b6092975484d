"""Experiment drivers: approximation sweeps, synthetic DoS trials and a
synthetic sequence with a regime switch.

Every driver is a pure function of its arguments and a base seed; the CLI and
the acceptance tests both call into here.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

from .baselines import dissimilarity
from .entropy import entropy_exact, entropy_hat, entropy_tilde
from .evalkit import ctrr, detection_rate, median_time, sae
from .generators import (
    STREAM_EXPERIMENT,
    ModelSpec,
    edge_churn,
    erdos_renyi,
    generate,
    inject_dos,
    rng_for,
)
from .graph import Graph, graph_difference
from .incremental import EXACT_SMAX, IncrementalState
from .jsdist import jsdist_incremental
from .spectral import DEFAULT_ORACLE_CAP

APPROX_KINDS = {"hat": entropy_hat, "tilde": entropy_tilde}


@dataclass
class SweepRow:
    model: str
    n: int
    avg_degree: float
    p_ws: float
    seed: int
    kind: str
    H: float
    approx: float
    SAE: float
    time_exact: Optional[float]
    time_approx: Optional[float]
    CTRR: Optional[float]

    def as_dict(self) -> dict:
        return asdict(self)


def approximation_rows(spec: ModelSpec, kinds: Sequence[str] = ("hat", "tilde"), timing: bool = True,
                       runs: int = 5, cap: int = DEFAULT_ORACLE_CAP) -> list[SweepRow]:
    """Exact entropy and each surrogate on one generated graph.

    With ``timing`` every quantity is timed as the median of ``runs`` calls on
    a fresh copy of the graph (so cached matrices are rebuilt each time).
    """
    g = generate(spec)
    h = entropy_exact(g, cap).value
    t_exact = median_time(lambda x: entropy_exact(x, cap), g.copy, runs) if timing else None
    rows = []
    for kind in kinds:
        fn = APPROX_KINDS[kind]
        approx = fn(g).value
        t_approx = median_time(fn, g.copy, runs) if timing else None
        rows.append(SweepRow(
            spec.model, spec.n, spec.avg_degree, spec.p_ws, spec.seed, kind, h, approx,
            sae(h, approx, g.n), t_exact, t_approx,
            ctrr(t_exact, t_approx) if timing else None,
        ))
    return rows


def sweep(specs: Iterable[ModelSpec], kinds=("hat", "tilde"), timing: bool = True, runs: int = 5,
          cap: int = DEFAULT_ORACLE_CAP):
    for spec in specs:
        yield from approximation_rows(spec, kinds, timing, runs, cap)


def mean_sae(model: str, n: int, avg_degree: float, seeds: Iterable[int], kind: str,
             p_ws: float = 0.0, scaled: bool = True) -> float:
    """Mean SAE (or, with ``scaled=False``, mean absolute error) over seeds."""
    vals = []
    for seed in seeds:
        row = approximation_rows(ModelSpec(model, n, avg_degree, p_ws, seed), (kind,), timing=False)[0]
        vals.append(row.SAE if scaled else row.H - row.approx)
    return math.fsum(vals) / len(vals)


# ---------------------------------------------------------------- sequences

def score_sequence(graphs: Sequence[Graph], method: str, k: int = 6, cap: int = DEFAULT_ORACLE_CAP,
                   mode: str = EXACT_SMAX) -> list[float]:
    """Dissimilarity of each consecutive pair ``(graphs[t], graphs[t + 1])``.

    ``js_inc`` walks the sequence as a change stream with one incremental
    state; the other methods score each pair independently.
    """
    if len(graphs) < 2:
        return []
    if method == "js_inc":
        state = IncrementalState(graphs[0], mode)
        out = []
        for a, b in zip(graphs, graphs[1:]):
            res, state = jsdist_incremental(state, graph_difference(a, b))
            out.append(res.magnitude)
        return out
    return [dissimilarity(method, a, b, k, cap).value for a, b in zip(graphs, graphs[1:])]


@dataclass
class DosTrial:
    graphs: list
    event_graph: int  # index of the graph that received the attack
    target: object

    @property
    def true_index(self) -> int:
        """The pair ``(event_graph, event_graph + 1)`` is the one to detect."""
        return self.event_graph


def dos_trial(x_percent: float, seed: int, n: int = 1000, avg_degree: float = 10, snapshots: int = 9,
              churn: float = 0.01) -> DosTrial:
    """ER snapshots with per-snapshot edge churn; one of the first ``snapshots - 1``
    graphs (uniformly chosen) receives a DoS-style star."""
    rng = rng_for(seed, STREAM_EXPERIMENT)
    seq = [generate(ModelSpec("er", n, avg_degree, 0.0, seed))]
    for _ in range(snapshots - 1):
        seq.append(edge_churn(seq[-1], churn, rng))
    ev = int(rng.integers(snapshots - 1))
    seq[ev], target = inject_dos(seq[ev], x_percent, seed)
    return DosTrial(seq, ev, target)


def dos_detection(x_percent: float, trials: int, methods: Sequence[str], base_seed: int = 0,
                  top_k: int = 2, k: int = 6, **trial_kw) -> dict:
    """Detection rate per method; trial ``i`` uses seed ``base_seed + i``."""
    collected = {m: [] for m in methods}
    for i in range(trials):
        trial = dos_trial(x_percent, base_seed + i, **trial_kw)
        for m in methods:
            collected[m].append((score_sequence(trial.graphs, m, k), trial.true_index))
    return {m: detection_rate(collected[m], top_k) for m in methods}


def regime_switch_sequence(seed: int = 0, n: int = 300, length: int = 12, switch: int = 6,
                           base_degree: float = 20, degrees=(4.0, 12.0), step: float = 0.02) -> list[Graph]:
    """Weighted sequence moving between two ER perturbation regimes.

    A fixed ER backbone carries unit weights.  Regime one adds an ER edge set
    of mean degree ``degrees[0]`` whose extra weight fades out quadratically,
    reaching 0 at graph ``switch`` (1-based); regime two adds a second ER
    edge set of mean degree ``degrees[1]`` whose weight grows quadratically
    from that graph on.  Consecutive graphs are therefore most alike around
    the switch.
    """
    if not (1 < switch < length):
        raise ValueError("switch must be an interior position")
    rng = rng_for(seed, STREAM_EXPERIMENT)
    base = erdos_renyi(n, base_degree / (n - 1), rng)
    e1 = erdos_renyi(n, degrees[0] / (n - 1), rng).edges
    e2 = erdos_renyi(n, degrees[1] / (n - 1), rng).edges
    out = []
    for t in range(1, length + 1):
        a = step * max(switch - t, 0) ** 2
        b = step * max(t - switch, 0) ** 2
        w = dict(base.edges)
        for key in e1:
            if a > 0:
                w[key] = w.get(key, 0.0) + a
        for key in e2:
            if b > 0:
                w[key] = w.get(key, 0.0) + b
        out.append(Graph(w, nodes=range(n)))
    return out
