"""Incremental maintenance of ``Q``, ``c``, ``s_max`` and the strength-based entropy.

An :class:`IncrementalState` absorbs one :class:`~vnge.graph.DeltaGraph` at a
time in ``O(dn + dm)`` work, using the closed-form update

    Q' = (Q - 1) / (1 + c dS)^2 - (c / (1 + c dS))^2 dQ + 1
    c' = c - c^2 dS / (1 + c dS)

with ``dQ = 2 sum s_i ds_i + sum ds_i^2 + 4 sum w_ij dw_ij + 2 sum dw_ij^2``
taken over touched nodes and edges only.

Two policies exist for the largest strength:

``paper-faithful``
    ``s_max`` only grows: ``s_max += max(0, max_touched(s_i + ds_i) - s_max)``.
    Cheap and exact for growth-only streams, stale once the busiest node
    loses weight.
``exact-smax`` (default)
    Tracks the node holding the maximum and rescans all strengths only when
    that node's strength decreases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .entropy import EntropyReport, quadratic_from_sums, quadratic_q, tilde_from_parts
from .errors import (EdgelessGraph, NegativeResultingWeight, StreamStepError,
                     TotalWeightNonPositive)
from .graph import ZERO_WEIGHT, DeltaGraph, Graph, strengths

PAPER_FAITHFUL = "paper-faithful"
EXACT_SMAX = "exact-smax"
MODES = (PAPER_FAITHFUL, EXACT_SMAX)

REBASELINE_EVERY = 1 << 16


@dataclass
class _Step:
    q: float
    c: float
    s_max: float
    holder: object
    new_strengths: dict
    new_weights: dict  # edge -> weight, 0.0 means delete


class IncrementalState:
    def __init__(self, g: Graph, mode: str = EXACT_SMAX):
        if mode not in MODES:
            raise ValueError(f"unknown s_max mode {mode!r}; expected one of {MODES}")
        sv = strengths(g)
        self.mode = mode
        self.strengths: dict = sv.as_dict()
        self.weights: dict = dict(g.edges)
        self.c = 1.0 / sv.total
        self.q = quadratic_q(g, sv)
        self.s_max = sv.s_max
        self._holder = max(self.strengths, key=self.strengths.__getitem__)
        self.step_count = 0

    # ---- read-only views ---------------------------------------------

    @property
    def total(self) -> float:
        return 1.0 / self.c

    def entropy_tilde(self) -> EntropyReport:
        value, arg, degenerate = tilde_from_parts(self.q, self.c, self.s_max)
        return EntropyReport("tilde", value, self.q, arg, degenerate=degenerate)

    def to_graph(self) -> Graph:
        return Graph(self.weights, nodes=self.strengths)

    def fork(self) -> "IncrementalState":
        twin = object.__new__(IncrementalState)
        twin.__dict__.update(self.__dict__)
        twin.strengths = dict(self.strengths)
        twin.weights = dict(self.weights)
        return twin

    # ---- updates -----------------------------------------------------

    def _evaluate(self, d: DeltaGraph) -> _Step:
        new_weights = {}
        removed = added = 0
        for key, dw in d.edge_deltas.items():
            w_old = self.weights.get(key, 0.0)
            w_new = w_old + dw
            if w_new < -ZERO_WEIGHT:
                raise NegativeResultingWeight(f"edge {key!r} would get weight {w_new}")
            if w_new <= ZERO_WEIGHT:
                w_new = 0.0
                removed += key in self.weights
            elif key not in self.weights:
                added += 1
            new_weights[key] = w_new

        c = self.c
        ds_total = math.fsum(d.strength_deltas.values())
        scale = 1.0 + c * ds_total
        if scale <= 0.0 or len(self.weights) + added - removed == 0:
            raise TotalWeightNonPositive(
                f"total strength would become {self.total + ds_total!r}; the graph must keep an edge"
            )

        terms = []
        new_strengths = {}
        for node, ds in d.strength_deltas.items():
            s = self.strengths.get(node, 0.0)
            terms.append(2.0 * s * ds)
            terms.append(ds * ds)
            s_new = s + ds
            new_strengths[node] = 0.0 if abs(s_new) <= ZERO_WEIGHT else s_new
        for node in d.new_nodes:
            new_strengths.setdefault(node, self.strengths.get(node, 0.0))
        for key, dw in d.edge_deltas.items():
            terms.append(4.0 * self.weights.get(key, 0.0) * dw)
            terms.append(2.0 * dw * dw)
        dq = math.fsum(terms)

        q_new = (self.q - 1.0) / (scale * scale) - (c / scale) ** 2 * dq + 1.0
        c_new = c - c * c * ds_total / scale
        s_max, holder = self._next_smax(new_strengths)
        return _Step(q_new, c_new, s_max, holder, new_strengths, new_weights)

    def _next_smax(self, new_strengths: dict):
        s_max, holder = self.s_max, self._holder
        if not new_strengths:
            return s_max, holder
        if self.mode == PAPER_FAITHFUL:
            top = max(new_strengths, key=new_strengths.__getitem__)
            bump = max(0.0, new_strengths[top] - s_max)
            return s_max + bump, (top if bump > 0.0 else holder)
        if holder in new_strengths and new_strengths[holder] < s_max:
            # the maximum may have moved anywhere: rescan
            best, best_node = -math.inf, None
            for node, s in self.strengths.items():
                s = new_strengths.get(node, s)
                if s > best:
                    best, best_node = s, node
            for node, s in new_strengths.items():
                if node not in self.strengths and s > best:
                    best, best_node = s, node
            return best, best_node
        for node, s in new_strengths.items():
            if s > s_max:
                s_max, holder = s, node
        return s_max, holder

    def _commit(self, step: _Step):
        for key, w in step.new_weights.items():
            if w == 0.0:
                self.weights.pop(key, None)
            else:
                self.weights[key] = w
        self.strengths.update(step.new_strengths)
        self.q, self.c = step.q, step.c
        self.s_max, self._holder = step.s_max, step.holder
        self.step_count += 1
        if self.step_count % REBASELINE_EVERY == 0:
            self.rebaseline()

    def rebaseline(self):
        """Recompute ``Q`` and ``c`` from the stored maps to cancel accumulated rounding."""
        total = 2.0 * math.fsum(self.weights.values())
        if total <= 0.0:
            raise EdgelessGraph("state holds no edges")
        sum_s2 = math.fsum(s * s for s in self.strengths.values())
        sum_w2 = math.fsum(w * w for w in self.weights.values())
        self.c = 1.0 / total
        self.q = quadratic_from_sums(sum_s2, sum_w2, total)

    def update_q(self, d: DeltaGraph) -> tuple[float, float]:
        """Absorb ``d``; returns the new ``(Q, c)``."""
        step = self._evaluate(d)
        self._commit(step)
        return self.q, self.c

    def update_entropy_tilde(self, d: DeltaGraph) -> EntropyReport:
        self.update_q(d)
        return self.entropy_tilde()

    def preview_entropy_tilde(self, d: DeltaGraph) -> EntropyReport:
        """Entropy of ``G ⊕ d`` without advancing the state (an O(dn + dm) fork)."""
        step = self._evaluate(d)
        value, arg, degenerate = tilde_from_parts(step.q, step.c, step.s_max)
        return EntropyReport("tilde", value, step.q, arg, degenerate=degenerate)


def init_state(g: Graph, mode: str = EXACT_SMAX) -> IncrementalState:
    return IncrementalState(g, mode)


def stream_run(g0: Graph, deltas: Iterable[DeltaGraph], mode: str = EXACT_SMAX) -> list[EntropyReport]:
    state = IncrementalState(g0, mode)
    reports = []
    for step, d in enumerate(deltas):
        try:
            reports.append(state.update_entropy_tilde(d))
        except (NegativeResultingWeight, TotalWeightNonPositive) as exc:
            raise StreamStepError(step, exc) from exc
    return reports
