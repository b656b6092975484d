"""Command-line interface: ``vnge {entropy,jsdist,stream,bench,anomaly}``.

Every subcommand writes a CSV report to stdout (or ``--output``).  Exit codes:
0 success, 2 unreadable or malformed input, 3 domain error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from contextlib import contextmanager

from . import evalkit, experiments
from .baselines import METHODS
from .entropy import entropy_bounds, entropy_exact, entropy_hat, entropy_quadratic, entropy_tilde
from .errors import ParseError, SeriesTooShort, StreamStepError, VngeError
from .generators import MODELS, ModelSpec
from .graph import apply_delta
from .incremental import EXACT_SMAX, MODES, IncrementalState
from .io import CsvReport, NodeIndex, parse_change_stream, read_edge_list, resolve_step
from .jsdist import JS_KINDS, jsdist_incremental
from .spectral import DEFAULT_ORACLE_CAP, EIGENSOLVERS

log = logging.getLogger("vnge")


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(x) for x in text.split(",") if x]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def _methods(text):
    out = _csv_list(str)(text)
    bad = [m for m in out if m not in METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown methods {bad}; choose from {','.join(METHODS)}")
    return out


class Clock:
    """Wall-time column helper; reports nothing under ``--no-timing``."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.ns = None

    @contextmanager
    def measure(self):
        t0 = time.perf_counter_ns()
        yield
        self.ns = time.perf_counter_ns() - t0 if self.enabled else None


# ------------------------------------------------------------------ entropy

def cmd_entropy(args, out):
    g, index = read_edge_list(args.graph)
    _maybe_write_mapping(args, index)
    kinds = ["exact", "hat", "tilde", "quadratic"] if args.kind == "all" else [args.kind]
    rep = CsvReport(out, ["kind", "value", "Q", "spectral_scalar", "degenerate", "wall_time_ns"])
    clock = Clock(not args.no_timing)
    for kind in kinds:
        with clock.measure():
            if kind == "exact":
                r = entropy_exact(g, args.oracle_cap)
            elif kind == "hat":
                r = entropy_hat(g, eigensolver=args.eigensolver, tol=args.tol)
            elif kind == "tilde":
                r = entropy_tilde(g)
            else:
                r = entropy_quadratic(g)
        rep.row({"kind": kind, "value": r.value, "Q": r.q, "spectral_scalar": r.spectral_scalar,
                 "degenerate": int(r.degenerate), "wall_time_ns": clock.ns})
    if args.kind == "all" and g.n <= args.oracle_cap:
        with clock.measure():
            lower, upper = entropy_bounds(g, args.oracle_cap)
        rep.row({"kind": "bound_lower", "value": lower, "wall_time_ns": clock.ns})
        rep.row({"kind": "bound_upper", "value": upper, "wall_time_ns": clock.ns})
    return 0


# ------------------------------------------------------------------- jsdist

def cmd_jsdist(args, out):
    index = NodeIndex()
    g1, _ = read_edge_list(args.graph1, index)
    g2, _ = read_edge_list(args.graph2, index)
    _maybe_write_mapping(args, index)
    clock = Clock(not args.no_timing)
    with clock.measure():
        if args.kind == "exact":
            r = JS_KINDS["exact"](g1, g2, args.oracle_cap)
        else:
            r = JS_KINDS[args.kind](g1, g2)
    rep = CsvReport(out, ["kind", "distance", "divergence", "clamped", "wall_time_ns"])
    rep.row({"kind": r.kind, "distance": r.distance, "divergence": r.divergence,
             "clamped": int(r.clamped), "wall_time_ns": clock.ns})
    return 0


# ------------------------------------------------------------------- stream

def cmd_stream(args, out):
    g0, index = read_edge_list(args.initial)
    state = IncrementalState(g0, args.mode)
    rep = CsvReport(out, ["step", "H_tilde", "Q", "jsdist", "divergence", "wall_time_ns"])
    clock = Clock(not args.no_timing)
    with open(args.stream, encoding="utf-8") as fh:
        for record in parse_change_stream(fh, index, args.stream):
            try:
                with clock.measure():
                    d = resolve_step(record, lambda key: state.weights.get(key, 0.0), args.stream)
                    if args.metric == "jsdist":
                        res, state = jsdist_incremental(state, d)
                    else:
                        state.update_q(d)
                        res = None
            except VngeError as exc:
                raise StreamStepError(record.step, exc) from exc
            h = state.entropy_tilde()
            rep.row({"step": record.step, "H_tilde": h.value, "Q": h.q,
                     "jsdist": None if res is None else res.distance,
                     "divergence": None if res is None else res.divergence,
                     "wall_time_ns": clock.ns})
    _maybe_write_mapping(args, index)
    return 0


# -------------------------------------------------------------------- bench

def cmd_bench(args, out):
    kinds = ["hat", "tilde"] if args.kind == "all" else [args.kind]
    specs = []
    for n in args.n:
        for d in args.avg_degree:
            for p in (args.p_ws if args.model == "ws" else [0.0]):
                for i in range(args.seeds):
                    spec = ModelSpec(args.model, n, d, p, args.seed + i)
                    spec.validate()
                    specs.append(spec)
    cols = ["model", "n", "avg_degree", "p_ws", "seed", "kind", "H", "approx", "SAE",
            "time_exact", "time_approx", "CTRR"]
    rep = CsvReport(out, cols)
    for row in experiments.sweep(specs, kinds, timing=not args.no_timing, runs=args.runs, cap=args.oracle_cap):
        rep.row(row.as_dict())
    return 0


# ------------------------------------------------------------------ anomaly

ANOMALY_COLUMNS = ["record", "method", "t", "score", "tds", "score_rank", "bifurcation",
                   "pcc", "srcc", "detection_rate"]


def _load_sequence(args):
    if args.graphs:
        index = NodeIndex()
        graphs = [read_edge_list(p, index)[0] for p in args.graphs]
        return graphs, index
    if args.initial and args.stream:
        g, index = read_edge_list(args.initial)
        graphs = [g]
        with open(args.stream, encoding="utf-8") as fh:
            for record in parse_change_stream(fh, index, args.stream):
                try:
                    d = resolve_step(record, lambda key: graphs[-1].edges.get(key, 0.0), args.stream)
                    graphs.append(apply_delta(graphs[-1], d))
                except VngeError as exc:
                    raise StreamStepError(record.step, exc) from exc
        return graphs, index
    if args.regime_switch:
        return experiments.regime_switch_sequence(args.seed), None
    raise VngeError("anomaly needs --graphs, --initial with --stream, --regime-switch or --inject-dos")


def _read_reference(path):
    vals = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.split("#", 1)[0].strip()
            if text:
                try:
                    vals.append(float(text))
                except ValueError:
                    raise ParseError(f"bad number {text!r}", path, lineno) from None
    return vals


def cmd_anomaly(args, out):
    rep = CsvReport(out, ANOMALY_COLUMNS)
    if args.inject_dos is not None:
        rates = experiments.dos_detection(
            args.inject_dos, args.trials, args.methods, base_seed=args.seed, top_k=args.top_k, k=args.k,
            n=args.n, avg_degree=args.avg_degree, snapshots=args.snapshots, churn=args.churn,
        )
        for m in args.methods:
            rep.row({"record": "summary", "method": m, "detection_rate": rates[m]})
        return 0

    graphs, index = _load_sequence(args)
    if len(graphs) < 2:
        raise SeriesTooShort("anomaly scoring needs at least two graphs")
    if index is not None:
        _maybe_write_mapping(args, index)
    reference = _read_reference(args.reference) if args.reference else None
    for m in args.methods:
        scores = experiments.score_sequence(graphs, m, args.k, args.oracle_cap, args.mode)
        analysis = evalkit.analyze_series(scores, reference)
        rank_of = {i: r + 1 for r, i in enumerate(analysis.ranking)}
        bif = set(analysis.bifurcations)
        for t in range(len(graphs)):
            rep.row({"record": "graph", "method": m, "t": t + 1,
                     "score": scores[t] if t < len(scores) else None,
                     "tds": analysis.tds[t],
                     "score_rank": rank_of.get(t),
                     "bifurcation": int(t in bif)})
        if analysis.correlations is not None:
            pcc, srcc = analysis.correlations
            rep.row({"record": "summary", "method": m, "pcc": pcc, "srcc": srcc})
    return 0


# --------------------------------------------------------------------- main

def _maybe_write_mapping(args, index):
    if getattr(args, "mapping", None):
        with open(args.mapping, "w", encoding="utf-8") as fh:
            index.write(fh)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vnge", description="Von Neumann graph entropy toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the CSV here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="leave timing columns empty")
    common.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP,
                        help="largest n for dense eigendecompositions")
    common.add_argument("--mapping", help="write 'index label' node mapping to this file")

    e = sub.add_parser("entropy", parents=[common], help="entropy of one graph")
    e.add_argument("graph")
    e.add_argument("--kind", choices=["exact", "hat", "tilde", "quadratic", "all"], default="all")
    e.add_argument("--eigensolver", choices=EIGENSOLVERS, default="auto")
    e.add_argument("--tol", type=float, default=1e-12)
    e.set_defaults(func=cmd_entropy)

    j = sub.add_parser("jsdist", parents=[common], help="Jensen-Shannon distance of two graphs")
    j.add_argument("graph1")
    j.add_argument("graph2")
    j.add_argument("--kind", choices=sorted(JS_KINDS), default="fast")
    j.set_defaults(func=cmd_jsdist)

    s = sub.add_parser("stream", parents=[common], help="incremental entropy over a change stream")
    s.add_argument("initial")
    s.add_argument("stream")
    s.add_argument("--mode", choices=MODES, default=EXACT_SMAX)
    s.add_argument("--metric", choices=["tilde", "jsdist"], default="jsdist")
    s.set_defaults(func=cmd_stream)

    b = sub.add_parser("bench", parents=[common], help="approximation error and speed sweep")
    b.add_argument("--model", choices=MODELS, default="er")
    b.add_argument("--n", type=_csv_list(int), default=[500], help="comma-separated sizes")
    b.add_argument("--avg-degree", type=_csv_list(float), default=[10.0])
    b.add_argument("--p-ws", type=_csv_list(float), default=[0.1])
    b.add_argument("--seed", type=int, default=0, help="first seed")
    b.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    b.add_argument("--kind", choices=["hat", "tilde", "all"], default="all")
    b.add_argument("--runs", type=int, default=5, help="timed runs per measurement (median)")
    b.set_defaults(func=cmd_bench)

    a = sub.add_parser("anomaly", parents=[common], help="dissimilarity series, TDS and detection")
    a.add_argument("--graphs", nargs="+", help="edge-list files in temporal order")
    a.add_argument("--initial", help="initial edge list for --stream")
    a.add_argument("--stream", help="change stream applied to --initial")
    a.add_argument("--regime-switch", action="store_true", help="use the synthetic 12-graph sequence")
    a.add_argument("--methods", type=_methods, default=["js_fast"],
                   help=f"comma-separated, from {','.join(METHODS)}")
    a.add_argument("--reference", help="file with one reference value per pairwise score")
    a.add_argument("--k", type=int, default=6, help="eigenvalues compared by lambda distances")
    a.add_argument("--top-k", type=int, default=2, help="ranking depth counted as a detection")
    a.add_argument("--mode", choices=MODES, default=EXACT_SMAX)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--trials", type=int, default=50)
    a.add_argument("--inject-dos", type=float, metavar="X", help="synthetic DoS trials with X%% attackers")
    a.add_argument("--n", type=int, default=1000)
    a.add_argument("--avg-degree", type=float, default=10.0)
    a.add_argument("--snapshots", type=int, default=9)
    a.add_argument("--churn", type=float, default=0.01)
    a.set_defaults(func=cmd_anomaly)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except VngeError as exc:
        print(f"vnge: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"vnge: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"vnge: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
