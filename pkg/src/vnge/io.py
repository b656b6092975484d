"""Edge-list and change-stream files, and CSV reports.

Edge list
    One edge per line, ``u v [w]`` (weight defaults to 1.0).  A line holding
    a single id declares an isolated node.  ``#`` starts a comment.
Change stream
    ``step op u v [w]`` lines.  ``A`` adds weight ``w`` (default 1.0),
    ``D`` deletes the edge, ``M`` changes its weight by the signed ``w``.
    Lines sharing a step form one delta; steps never decrease.

Node ids are arbitrary strings.  They are mapped to dense integers in order of
first appearance by a :class:`NodeIndex`, which can be shared between files so
that a stream refers to the same nodes as its initial graph.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, TextIO

from .errors import EmptyEdgeList, ParseError
from .graph import DeltaGraph, Graph, edge_key

FLOAT_FORMAT = "%.17g"


def fmt_float(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool) or isinstance(x, int):
        return str(int(x))
    if isinstance(x, float):
        return FLOAT_FORMAT % x
    return str(x)


@dataclass
class NodeIndex:
    labels: list = field(default_factory=list)
    ids: dict = field(default_factory=dict)

    def get(self, label: str) -> int:
        i = self.ids.get(label)
        if i is None:
            i = self.ids[label] = len(self.labels)
            self.labels.append(label)
        return i

    def __len__(self):
        return len(self.labels)

    def label(self, i: int) -> str:
        return self.labels[i]

    def write(self, fh: TextIO):
        for i, label in enumerate(self.labels):
            fh.write(f"{i} {label}\n")


def _tokens(lines: Iterable[str]) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if text:
            yield lineno, text.split()


def _weight(tok: str, path, lineno) -> float:
    try:
        w = float(tok)
    except ValueError:
        raise ParseError(f"bad weight {tok!r}", path, lineno) from None
    if not math.isfinite(w):
        raise ParseError(f"weight must be finite, got {tok!r}", path, lineno)
    return w


def parse_edge_list(lines: Iterable[str], index: Optional[NodeIndex] = None,
                    path: Optional[str] = None) -> tuple[Graph, NodeIndex]:
    index = NodeIndex() if index is None else index
    edges: dict = {}
    nodes = set()
    for lineno, tok in _tokens(lines):
        if len(tok) == 1:
            nodes.add(index.get(tok[0]))
            continue
        if len(tok) > 3:
            raise ParseError(f"expected 'u v [w]', got {len(tok)} fields", path, lineno)
        u, v = index.get(tok[0]), index.get(tok[1])
        w = _weight(tok[2], path, lineno) if len(tok) == 3 else 1.0
        if u == v:
            raise ParseError(f"self-loop on {tok[0]!r}", path, lineno)
        if w <= 0.0:
            raise ParseError(f"weight must be positive, got {w!r}", path, lineno)
        key = edge_key(u, v)
        if key in edges:
            raise ParseError(f"duplicate edge {tok[0]} {tok[1]}", path, lineno)
        edges[key] = w
        nodes.update(key)
    if not nodes:
        raise EmptyEdgeList("edge list has no nodes", path)
    return Graph._trusted(edges, frozenset(nodes)), index


def read_edge_list(path: str, index: Optional[NodeIndex] = None) -> tuple[Graph, NodeIndex]:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, index, path)


def serialize_edge_list(g: Graph, label: Callable = str) -> str:
    """Canonical text: edges sorted by node pair, then isolated nodes."""
    out = []
    touched = set()
    for u, v in sorted(g.edges):
        out.append(f"{label(u)} {label(v)} {FLOAT_FORMAT % g.edges[(u, v)]}\n")
        touched.update((u, v))
    for u in g.node_order:
        if u not in touched:
            out.append(f"{label(u)}\n")
    return "".join(out)


def write_edge_list(g: Graph, path: str, label: Callable = str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_edge_list(g, label))


# ------------------------------------------------------------------ streams

@dataclass(frozen=True)
class ChangeLine:
    op: str
    u: int
    v: int
    w: Optional[float]
    lineno: int


@dataclass
class StepRecord:
    step: int
    lines: list


def parse_change_stream(lines: Iterable[str], index: NodeIndex,
                        path: Optional[str] = None) -> Iterator[StepRecord]:
    """Yield one :class:`StepRecord` per step, in file order.

    Deletions are resolved later, against the graph the step applies to
    (see :func:`resolve_step`).
    """
    current: Optional[StepRecord] = None
    for lineno, tok in _tokens(lines):
        if len(tok) not in (4, 5):
            raise ParseError(f"expected 'step op u v [w]', got {len(tok)} fields", path, lineno)
        try:
            step = int(tok[0])
        except ValueError:
            raise ParseError(f"bad step {tok[0]!r}", path, lineno) from None
        op = tok[1].upper()
        if op not in ("A", "D", "M"):
            raise ParseError(f"unknown op {tok[1]!r}; expected A, D or M", path, lineno)
        if tok[2] == tok[3]:
            raise ParseError(f"self-loop on {tok[2]!r}", path, lineno)
        w = _weight(tok[4], path, lineno) if len(tok) == 5 else None
        if op == "A":
            w = 1.0 if w is None else w
            if w <= 0.0:
                raise ParseError(f"added weight must be positive, got {w!r}", path, lineno)
        elif op == "M" and w is None:
            raise ParseError("M needs a signed weight change", path, lineno)
        if current is not None and step < current.step:
            raise ParseError(f"step {step} after step {current.step}", path, lineno)
        if current is None or step != current.step:
            if current is not None:
                yield current
            current = StepRecord(step, [])
        current.lines.append(ChangeLine(op, index.get(tok[2]), index.get(tok[3]), w, lineno))
    if current is not None:
        yield current


def resolve_step(record: StepRecord, weight_of: Callable, path: Optional[str] = None) -> DeltaGraph:
    """Turn a step's lines into a delta; ``weight_of(key)`` gives current weights.

    A deletion removes whatever weight the edge holds at that point of the
    step, including weight added by earlier lines of the same step.
    """
    pending: dict = {}
    for ln in record.lines:
        key = edge_key(ln.u, ln.v)
        if ln.op == "D":
            current = weight_of(key) + pending.get(key, 0.0)
            if current <= 0.0:
                raise ParseError("deleting an absent edge", path, ln.lineno)
            dw = -current
        else:
            dw = ln.w
        pending[key] = pending.get(key, 0.0) + dw
    nodes = {x for ln in record.lines for x in (ln.u, ln.v)}
    return DeltaGraph.from_edges(((u, v, dw) for (u, v), dw in pending.items() if dw != 0.0), nodes)


# ------------------------------------------------------------------ reports

class CsvReport:
    """Writes a header and rows with a fixed column order and 17-digit floats."""

    def __init__(self, fh: TextIO, columns: list):
        self.columns = list(columns)
        self._w = csv.writer(fh, lineterminator="\n")
        self._w.writerow(self.columns)

    def row(self, values: dict):
        self._w.writerow([fmt_float(values.get(c)) for c in self.columns])
