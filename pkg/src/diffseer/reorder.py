"""Node reordering for the matrix views.

Rows that behave alike should sit next to each other. We measure row
similarity against the matrix-wide mean, turn it into a distance, blend the
overview-level and detail-level distances with a weight ``alpha``, and order
the nodes by clustering the blended distances and untangling the dendrogram
so that the sum of adjacent distances along the leaves is minimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy.cluster.hierarchy import linkage
from scipy.spatial.distance import cdist, squareform

from .errors import (
    AlphaOutOfRangeError,
    DimensionError,
    NodeSetMismatchError,
    NonFiniteDistanceError,
    RangeError,
)
from .aggregate import OverviewMatrix, build_overview, resolve_range
from .model import DynamicWeightedGraph, GraphDiff, diff_stack, weight_stack

__all__ = [
    "DistanceMatrix",
    "NodeOrdering",
    "row_similarity",
    "detail_distance",
    "overview_distance",
    "blend",
    "leaf_order",
    "order_nodes",
]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise node distances in [0, 1], zero diagonal."""

    node_ids: tuple[str, ...]
    values: np.ndarray  # (n, n) float64

    @property
    def size(self) -> int:
        return len(self.node_ids)


@dataclass(frozen=True, slots=True)
class NodeOrdering:
    """A permutation of the node universe with its adjacent-distance sum.

    ``alpha`` records the blend weight the ordering was computed under
    (``None`` when the ordering came from a raw distance matrix).
    """

    permutation: tuple[str, ...]
    objective: float
    alpha: float | None = None


def row_similarity(m: np.ndarray, a: int, b: int) -> float:
    """Similarity of two rows after centering on the matrix-wide mean.

    Cosine of the centered rows, scaled by 1/(n-1) so the value is bounded
    by +/- 1/(n-1); rows that are uniformly at the mean contribute 0.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
        raise DimensionError(f"need a square matrix with n >= 2, got shape {m.shape}")
    n = m.shape[0]
    if not (0 <= a < n and 0 <= b < n):
        raise DimensionError(f"row indices ({a}, {b}) out of bounds for n={n}")
    if a == b:
        raise ValueError("row indices must differ")
    mu = m.mean()
    za = m[a] - mu
    zb = m[b] - mu
    na = float(np.linalg.norm(za))
    nb = float(np.linalg.norm(zb))
    if na == 0.0 or nb == 0.0:
        return 0.0
    cos = float(np.dot(za, zb) / (na * nb))
    cos = max(-1.0, min(1.0, cos))
    return cos / (n - 1)


def _pairwise_similarity(m: np.ndarray) -> np.ndarray:
    """All-pairs version of :func:`row_similarity` for one grid."""
    n = m.shape[0]
    z = m - m.mean()
    gram = z @ z.T
    norms = np.sqrt(np.diag(gram).clip(min=0.0))
    denom = np.outer(norms, norms)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = np.where(denom > 0, gram / np.where(denom > 0, denom, 1.0), 0.0)
    np.clip(cos, -1.0, 1.0, out=cos)
    return cos / (n - 1)


def _normalize_offdiag(d: np.ndarray) -> np.ndarray:
    """Min-max scale the off-diagonal entries to [0, 1]; degenerate -> all 0."""
    n = d.shape[0]
    if n < 2:
        return np.zeros_like(d)
    off = ~np.eye(n, dtype=bool)
    lo = d[off].min()
    hi = d[off].max()
    if hi > lo:
        out = (d - lo) / (hi - lo)
    else:
        out = np.zeros_like(d)
    out[~off] = 0.0
    out = (out + out.T) / 2.0
    return out.clip(0.0, 1.0)


def detail_distance(
    grids: Sequence[np.ndarray], node_ids: Sequence[str]
) -> DistanceMatrix:
    """Distance from the detail grids: averaged dissimilarity, rescaled to [0, 1].

    Each grid contributes 1/(n-1) minus the row similarity, so the most
    similar pair sits at 0 before averaging; the average over grids is then
    min-max normalized over the off-diagonal entries.
    """
    if not grids:
        raise DimensionError("need at least one grid")
    n = len(node_ids)
    stack = [np.asarray(g, dtype=np.float64) for g in grids]
    for g in stack:
        if g.shape != (n, n):
            raise DimensionError(f"grid shape {g.shape} does not match {n} nodes")
    if n == 1:
        return DistanceMatrix(tuple(node_ids), np.zeros((1, 1)))

    acc = np.zeros((n, n), dtype=np.float64)
    for g in stack:
        acc += 1.0 / (n - 1) - _pairwise_similarity(g)
    acc /= len(stack)
    return DistanceMatrix(tuple(node_ids), _normalize_offdiag(acc))


def overview_distance(ov: OverviewMatrix) -> DistanceMatrix:
    """Manhattan distance over the per-transition overview features.

    Each cell contributes its positive count, negative count, and average
    change; each of the three channels is min-max scaled over the whole
    matrix before the row distances are taken, and the result is min-max
    normalized over the off-diagonal entries.
    """
    n = len(ov.node_order)
    if len(ov.transitions) < 1:
        raise DimensionError("need at least one transition column")
    if n == 1:
        return DistanceMatrix(ov.node_order, np.zeros((1, 1)))

    channels = []
    for raw in (ov.pos_counts, ov.neg_counts, ov.avg_change):
        x = np.asarray(raw, dtype=np.float64)
        lo, hi = x.min(), x.max()
        channels.append((x - lo) / (hi - lo) if hi > lo else np.zeros_like(x))
    features = np.concatenate(channels, axis=1)
    d = cdist(features, features, metric="cityblock")
    return DistanceMatrix(ov.node_order, _normalize_offdiag(d))


def blend(
    d_overview: DistanceMatrix, d_detail: DistanceMatrix, alpha: float
) -> DistanceMatrix:
    """Weighted mix alpha * overview + (1 - alpha) * detail.

    The endpoints return the respective input exactly, so orderings computed
    at alpha 0 or 1 cannot drift from the single-source ones.
    """
    if not np.isfinite(alpha) or not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha must be in [0, 1], got {alpha}")
    if d_overview.node_ids != d_detail.node_ids:
        raise NodeSetMismatchError(
            "overview and detail distances cover different node sets"
        )
    if alpha == 1.0:
        mixed = d_overview.values.copy()
    elif alpha == 0.0:
        mixed = d_detail.values.copy()
    else:
        mixed = alpha * d_overview.values + (1.0 - alpha) * d_detail.values
    return DistanceMatrix(d_overview.node_ids, mixed)


def _optimal_leaf_order(z: np.ndarray, d: np.ndarray, ids: Sequence[str]) -> list[int]:
    """Untangle a dendrogram so adjacent leaves are as close as possible.

    Dynamic program over the tree: for every subtree and every (first, last)
    leaf pair reachable by flipping internal nodes, keep the cheapest path
    cost. Ties are broken toward the lexicographically smallest node ids so
    the result is deterministic.
    """
    n = d.shape[0]
    n_nodes = 2 * n - 1
    left = [-1] * n_nodes
    right = [-1] * n_nodes
    leaves: list[list[int]] = [[i] for i in range(n)] + [[] for _ in range(n - 1)]
    for k in range(n - 1):
        a, b = int(z[k, 0]), int(z[k, 1])
        v = n + k
        left[v], right[v] = a, b
        leaves[v] = leaves[a] + leaves[b]

    # cost[v] maps (first, last) leaf pair to the best within-subtree path sum;
    # back[v] remembers the junction leaves (one per side) that achieved it
    cost: list[dict[tuple[int, int], float]] = [{} for _ in range(n_nodes)]
    back: list[dict[tuple[int, int], tuple[int, int]]] = [{} for _ in range(n_nodes)]
    for i in range(n):
        cost[i][(i, i)] = 0.0

    def consider(table, junctions, key, c, jct):
        known = table.get(key)
        if known is None or c < known:
            table[key] = c
            junctions[key] = jct
        elif c == known and (ids[jct[0]], ids[jct[1]]) < (
            ids[junctions[key][0]],
            ids[junctions[key][1]],
        ):
            junctions[key] = jct

    for v in range(n, n_nodes):
        ca, cb = cost[left[v]], cost[right[v]]
        table, junctions = cost[v], back[v]
        for (u, k1), c1 in ca.items():
            for (l2, w), c2 in cb.items():
                c = c1 + d[k1, l2] + c2
                consider(table, junctions, (u, w), c, (k1, l2))
                # flipping v itself reverses the order at identical cost
                consider(table, junctions, (w, u), c, (l2, k1))

    root = n_nodes - 1
    best = min(cost[root].values())
    ends = min(
        (pair for pair, c in cost[root].items() if c == best),
        key=lambda p: (ids[p[0]], ids[p[1]]),
    )
    leaves_set = [set(lv) for lv in leaves]

    def rebuild(v: int, u: int, w: int) -> list[int]:
        if v < n:
            return [u]
        a, b = left[v], right[v]
        first, second = (a, b) if u in leaves_set[a] else (b, a)
        k1, l2 = back[v][(u, w)]
        return rebuild(first, u, k1) + rebuild(second, l2, w)

    return rebuild(root, ends[0], ends[1])


def leaf_order(d: DistanceMatrix, alpha: float | None = None) -> NodeOrdering:
    """Order nodes by average-linkage clustering plus optimal leaf ordering.

    The returned permutation minimizes the sum of adjacent distances among
    all orders consistent with the dendrogram. Degenerate inputs (a single
    node, or all-zero distances) keep the input node order.
    """
    values = np.asarray(d.values, dtype=np.float64)
    if not np.isfinite(values).all():
        raise NonFiniteDistanceError("distance matrix contains non-finite entries")
    n = d.size
    if n == 1 or not values.any():
        return NodeOrdering(permutation=d.node_ids, objective=0.0, alpha=alpha)

    z = linkage(squareform(values, checks=False), method="average")
    order = _optimal_leaf_order(z, values, d.node_ids)
    objective = float(sum(values[order[i], order[i + 1]] for i in range(n - 1)))
    permutation = tuple(d.node_ids[i] for i in order)
    return NodeOrdering(permutation=permutation, objective=objective, alpha=alpha)


def order_nodes(
    g: DynamicWeightedGraph,
    diffs: Sequence[GraphDiff],
    t_range: tuple[int, int] | None = None,
    alpha: float = 0.5,
    detail_source: Literal["original", "difference"] = "original",
) -> NodeOrdering:
    """Full reordering pipeline for one transition range.

    Overview distances come from the aggregated cells of the range; detail
    distances come from the dense grids it spans (the snapshots touched by
    the range, or the diffs themselves when ``detail_source`` is
    ``difference``). Both are blended with ``alpha`` and fed to
    :func:`leaf_order`.
    """
    window = resolve_range(diffs, t_range)
    first = window[0].transition_index
    last = window[-1].transition_index

    ov = build_overview(diffs, g.nodes, (first, last))
    d_ov = overview_distance(ov)

    stack = weight_stack(g)
    if detail_source == "original":
        grids = list(stack[first - 1 : last + 1])
    elif detail_source == "difference":
        grids = list(diff_stack(stack)[first - 1 : last])
    else:
        raise RangeError(f"unknown detail source {detail_source!r}")
    d_det = detail_distance(grids, g.nodes)

    mixed = blend(d_ov, d_det, alpha)
    return leaf_order(mixed, alpha=alpha)
