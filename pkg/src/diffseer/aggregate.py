"""Change aggregates derived from the diff sequence.

The overview matrix holds one cell per (node, transition) summarizing the
weight changes of all edges incident to that node: counts of positive and
negative changes plus their signed mean. Detail matrices are the dense
node-by-node form of one diff or one snapshot. Chart series summarize each
column (stacked bars) and each row (area totals).

Transition ranges throughout are inclusive ``[first, last]`` in transition
indices: transition ``i`` is the change from snapshot ``i - 1`` to ``i``, so
valid values run 1..T-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

import numpy as np

from .errors import DomainError, RangeError
from .model import DynamicWeightedGraph, GraphDiff, node_index

__all__ = [
    "OverviewCell",
    "OverviewMatrix",
    "DetailMatrix",
    "ChartSeries",
    "build_overview",
    "build_detail",
    "build_charts",
    "color_scale",
    "resolve_range",
]

DetailKind = Literal["difference", "original"]


@dataclass(frozen=True, slots=True)
class OverviewCell:
    """Aggregated change at one (node, transition).

    ``avg_change`` is the mean of the signed deltas over all changed incident
    edges (0 when there are none), so its sign need not match the majority
    count. ``avg_pos``/``avg_neg`` are the means of just the positive/negative
    deltas, letting a renderer color the two bars separately.
    """

    node: str
    transition_index: int
    pos_count: int
    neg_count: int
    avg_change: float
    avg_pos: float
    avg_neg: float


@dataclass(frozen=True)
class OverviewMatrix:
    """Node-by-transition grid of overview cells, array-backed.

    Rows follow ``node_order``, columns follow ``transitions``. The arrays are
    the primary storage; :meth:`cell` materializes a single cell.
    """

    node_order: tuple[str, ...]
    transitions: tuple[int, ...]
    pos_counts: np.ndarray  # (n, k) int64
    neg_counts: np.ndarray  # (n, k) int64
    avg_change: np.ndarray  # (n, k) float64
    avg_pos: np.ndarray
    avg_neg: np.ndarray

    def cell(self, node: str, transition_index: int) -> OverviewCell:
        r = self.node_order.index(node)
        c = self.transitions.index(transition_index)
        return OverviewCell(
            node=node,
            transition_index=transition_index,
            pos_count=int(self.pos_counts[r, c]),
            neg_count=int(self.neg_counts[r, c]),
            avg_change=float(self.avg_change[r, c]),
            avg_pos=float(self.avg_pos[r, c]),
            avg_neg=float(self.avg_neg[r, c]),
        )

    def cells(self) -> Iterator[OverviewCell]:
        for node in self.node_order:
            for t in self.transitions:
                yield self.cell(node, t)


@dataclass(frozen=True)
class DetailMatrix:
    """Dense symmetric node-by-node grid for one timeslice.

    ``difference`` kind: entries are the deltas of one transition.
    ``original`` kind: entries are the raw weights of one snapshot.
    Zero means no change / no edge; the diagonal is zero.
    """

    kind: DetailKind
    time_index: int
    node_order: tuple[str, ...]
    values: np.ndarray  # (n, n) float64


@dataclass(frozen=True)
class ChartSeries:
    """Column and row summaries for the chart strip.

    ``pos_edges[k]``/``neg_edges[k]`` count the edges with positive/negative
    change at ``transitions[k]``; ``area[r]`` counts all changed edges
    incident to ``node_order[r]`` over the whole range.
    """

    transitions: tuple[int, ...]
    node_order: tuple[str, ...]
    pos_edges: np.ndarray  # (k,) int64
    neg_edges: np.ndarray  # (k,) int64
    area: np.ndarray  # (n,) int64


def resolve_range(
    diffs: Sequence[GraphDiff], t_range: tuple[int, int] | None
) -> list[GraphDiff]:
    """Select the diffs whose transition index falls in the inclusive range.

    ``None`` means the full range. Raises :class:`RangeError` when the bounds
    are inverted or fall outside the available transitions.
    """
    if not diffs:
        raise RangeError("no transitions available")
    by_index = {d.transition_index: d for d in diffs}
    lo, hi = min(by_index), max(by_index)
    if t_range is None:
        first, last = lo, hi
    else:
        first, last = t_range
    if first > last:
        raise RangeError(f"inverted range [{first}, {last}]")
    if first < lo or last > hi:
        raise RangeError(f"range [{first}, {last}] outside transitions [{lo}, {hi}]")
    try:
        return [by_index[i] for i in range(first, last + 1)]
    except KeyError as exc:
        raise RangeError(f"transition {exc.args[0]} missing from diff sequence") from exc


def _edge_arrays(d: GraphDiff, idx: dict[str, int]):
    m = len(d.edges)
    iu = np.fromiter((idx.get(e.u, -1) for e in d.edges), dtype=np.int64, count=m)
    iv = np.fromiter((idx.get(e.v, -1) for e in d.edges), dtype=np.int64, count=m)
    dl = np.fromiter((e.delta for e in d.edges), dtype=np.float64, count=m)
    return iu, iv, dl


def build_overview(
    diffs: Sequence[GraphDiff],
    nodes: Sequence[str],
    t_range: tuple[int, int] | None = None,
) -> OverviewMatrix:
    """Aggregate incident changes into one cell per (node, transition in range).

    ``nodes`` fixes the row order (any permutation of the universe); edges
    touching ids outside it are counted for the known endpoint only.
    """
    window = resolve_range(diffs, t_range)
    idx = {n: i for i, n in enumerate(nodes)}
    n, k = len(nodes), len(window)
    pos_counts = np.zeros((n, k), dtype=np.int64)
    neg_counts = np.zeros((n, k), dtype=np.int64)
    sum_all = np.zeros((n, k), dtype=np.float64)
    sum_pos = np.zeros((n, k), dtype=np.float64)
    sum_neg = np.zeros((n, k), dtype=np.float64)

    for c, d in enumerate(window):
        if not d.edges:
            continue
        iu, iv, dl = _edge_arrays(d, idx)
        ends = np.concatenate([iu, iv])
        deltas = np.concatenate([dl, dl])
        valid = ends >= 0
        pos = valid & (deltas > 0)
        neg = valid & (deltas < 0)
        np.add.at(pos_counts[:, c], ends[pos], 1)
        np.add.at(neg_counts[:, c], ends[neg], 1)
        np.add.at(sum_all[:, c], ends[valid], deltas[valid])
        np.add.at(sum_pos[:, c], ends[pos], deltas[pos])
        np.add.at(sum_neg[:, c], ends[neg], deltas[neg])

    total = pos_counts + neg_counts
    with np.errstate(invalid="ignore"):
        avg_change = np.where(total > 0, sum_all / np.maximum(total, 1), 0.0)
        avg_pos = np.where(pos_counts > 0, sum_pos / np.maximum(pos_counts, 1), 0.0)
        avg_neg = np.where(neg_counts > 0, sum_neg / np.maximum(neg_counts, 1), 0.0)

    return OverviewMatrix(
        node_order=tuple(nodes),
        transitions=tuple(d.transition_index for d in window),
        pos_counts=pos_counts,
        neg_counts=neg_counts,
        avg_change=avg_change,
        avg_pos=avg_pos,
        avg_neg=avg_neg,
    )


def build_detail(
    g: DynamicWeightedGraph,
    diffs: Sequence[GraphDiff],
    kind: DetailKind,
    time_index: int,
) -> DetailMatrix:
    """Dense symmetric grid for one timeslice.

    ``difference`` takes a transition index (1..T-1) and densifies that diff;
    ``original`` takes a snapshot index (0..T-1) and densifies its adjacency.
    """
    idx = node_index(g)
    n = len(g.nodes)
    values = np.zeros((n, n), dtype=np.float64)

    if kind == "difference":
        by_index = {d.transition_index: d for d in diffs}
        if time_index not in by_index:
            raise RangeError(f"transition {time_index} out of range")
        for e in by_index[time_index].edges:
            a, b = idx.get(e.u), idx.get(e.v)
            if a is None or b is None:
                continue
            values[a, b] = e.delta
            values[b, a] = e.delta
    elif kind == "original":
        if not 0 <= time_index < g.timeslice_count:
            raise RangeError(f"timeslice {time_index} out of range")
        for u, v, w in g.snapshots[time_index].edges:
            a, b = idx.get(u), idx.get(v)
            if a is None or b is None:
                continue
            values[a, b] = w
            values[b, a] = w
    else:
        raise DomainError(f"unknown detail kind {kind!r}")

    return DetailMatrix(kind=kind, time_index=time_index, node_order=g.nodes, values=values)


def build_charts(
    diffs: Sequence[GraphDiff],
    nodes: Sequence[str],
    t_range: tuple[int, int] | None = None,
) -> ChartSeries:
    """Stacked-bar totals per transition and changed-edge totals per node."""
    window = resolve_range(diffs, t_range)
    idx = {n: i for i, n in enumerate(nodes)}
    n, k = len(nodes), len(window)
    pos_edges = np.zeros(k, dtype=np.int64)
    neg_edges = np.zeros(k, dtype=np.int64)
    area = np.zeros(n, dtype=np.int64)

    for c, d in enumerate(window):
        if not d.edges:
            continue
        iu, iv, dl = _edge_arrays(d, idx)
        pos_edges[c] = int((dl > 0).sum())
        neg_edges[c] = int((dl < 0).sum())
        ends = np.concatenate([iu, iv])
        np.add.at(area, ends[ends >= 0], 1)

    return ChartSeries(
        transitions=tuple(d.transition_index for d in window),
        node_order=tuple(nodes),
        pos_edges=pos_edges,
        neg_edges=neg_edges,
        area=area,
    )


def color_scale(
    value: float, max_abs: float, scheme: Literal["diverging", "sequential"]
) -> float:
    """Normalize a value for color mapping; pixel colors are the renderer's job.

    ``diverging`` clamps value/max_abs to [-1, 1] (positive maps toward the
    warm end); ``sequential`` clamps to [0, 1].
    """
    if max_abs <= 0:
        raise DomainError(f"max_abs must be positive, got {max_abs}")
    x = value / max_abs
    if scheme == "diverging":
        return max(-1.0, min(1.0, x))
    if scheme == "sequential":
        return max(0.0, min(1.0, x))
    raise DomainError(f"unknown scheme {scheme!r}")
