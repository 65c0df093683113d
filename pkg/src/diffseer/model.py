"""Dynamic weighted graph model and the diff sequence between adjacent timeslices.

A dynamic weighted graph is a fixed node universe plus an ordered sequence of
undirected weighted snapshots. The difference between two adjacent snapshots is
the set of node pairs whose weight changed, with the signed change as the edge
value. Absent edges read as weight 0, so appearance and disappearance are
ordinary weight changes.

All values are immutable after construction and every operation is a pure
function, so anything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import math

import numpy as np

from .errors import IndexMismatchError, InvalidGraphError, UnknownNodeError

__all__ = [
    "GraphSnapshot",
    "DynamicWeightedGraph",
    "DiffEdge",
    "GraphDiff",
    "Violation",
    "canonical_pair",
    "snapshot",
    "dynamic_graph",
    "validate_graph",
    "compute_diff_sequence",
    "apply_diff",
    "node_presence",
    "node_index",
    "weight_stack",
    "diff_stack",
]

Edge = tuple[str, str, float]


def canonical_pair(u: str, v: str) -> tuple[str, str]:
    """Order an undirected pair so the lexicographically smaller id comes first."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, slots=True)
class GraphSnapshot:
    """One timeslice: an undirected weighted edge set over the node universe.

    Edges are stored as ``(u, v, weight)`` triples with ``u < v`` and sorted by
    pair; a pair that is absent has weight 0 and zero-weight edges are never
    stored. Use :func:`snapshot` to build one from unordered input.
    """

    index: int
    label: str
    edges: tuple[Edge, ...]

    def weights(self) -> dict[tuple[str, str], float]:
        """Pair -> weight mapping (fresh dict, absent pairs omitted)."""
        return {(u, v): w for u, v, w in self.edges}

    def weight(self, u: str, v: str) -> float:
        """Weight of the pair, 0.0 if absent."""
        key = canonical_pair(u, v)
        for eu, ev, w in self.edges:
            if (eu, ev) == key:
                return w
        return 0.0


def snapshot(index: int, label: str, edges: Iterable[Edge] | Mapping[tuple[str, str], float]) -> GraphSnapshot:
    """Build a snapshot with canonical pair order, sorted edges, zero weights dropped."""
    if isinstance(edges, Mapping):
        items = [(u, v, w) for (u, v), w in edges.items()]
    else:
        items = list(edges)
    canon = {}
    for u, v, w in items:
        canon[canonical_pair(u, v)] = float(w)
    triples = tuple((u, v, w) for (u, v), w in sorted(canon.items()) if w != 0.0)
    return GraphSnapshot(index=index, label=label, edges=triples)


@dataclass(frozen=True, slots=True)
class DynamicWeightedGraph:
    """Node universe plus ordered snapshot sequence.

    The universe is every node that carries at least one edge somewhere in the
    sequence; snapshot indices run 0..T-1. Construct via :func:`dynamic_graph`
    or a parser, then check invariants with :func:`validate_graph`.
    """

    nodes: tuple[str, ...]
    snapshots: tuple[GraphSnapshot, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.snapshots)

    @property
    def timeslice_count(self) -> int:
        return len(self.snapshots)

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def dynamic_graph(
    labels: Sequence[str],
    edges_per_slice: Sequence[Iterable[Edge] | Mapping[tuple[str, str], float]],
    nodes: Sequence[str] | None = None,
) -> DynamicWeightedGraph:
    """Assemble a graph from per-timeslice edge collections.

    When ``nodes`` is omitted the universe is the sorted union of endpoints.
    """
    if len(labels) != len(edges_per_slice):
        raise ValueError("labels and edges_per_slice must have equal length")
    snaps = tuple(snapshot(i, labels[i], edges_per_slice[i]) for i in range(len(labels)))
    if nodes is None:
        seen: set[str] = set()
        for s in snaps:
            for u, v, _ in s.edges:
                seen.add(u)
                seen.add(v)
        nodes = sorted(seen)
    return DynamicWeightedGraph(nodes=tuple(nodes), snapshots=snaps)


@dataclass(frozen=True, slots=True)
class DiffEdge:
    """Signed weight change of one pair between adjacent timeslices (never 0)."""

    u: str
    v: str
    delta: float


@dataclass(frozen=True, slots=True)
class GraphDiff:
    """All pairs whose weight changed from snapshot ``transition_index - 1`` to
    ``transition_index``, sorted by pair."""

    transition_index: int
    edges: tuple[DiffEdge, ...]

    def deltas(self) -> dict[tuple[str, str], float]:
        return {(e.u, e.v): e.delta for e in self.edges}


@dataclass(frozen=True)
class Violation:
    """One structural invariant breach, machine readable.

    ``code`` is a stable identifier; the remaining fields locate the offender.
    """

    code: str
    timeslice: int | None = None
    node: str | None = None
    edge: tuple[str, str] | None = None
    message: str = ""

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        parts = []
        if self.timeslice is not None:
            parts.append(f"t={self.timeslice}")
        if self.node is not None:
            parts.append(f"node={self.node}")
        if self.edge is not None:
            parts.append(f"edge={self.edge[0]}-{self.edge[1]}")
        loc = ", ".join(parts)
        return f"{self.code}({loc})" + (f": {self.message}" if self.message else "")

    def to_payload(self) -> dict:
        out: dict = {"code": self.code}
        if self.timeslice is not None:
            out["timeslice"] = self.timeslice
        if self.node is not None:
            out["node"] = self.node
        if self.edge is not None:
            out["edge"] = list(self.edge)
        if self.message:
            out["message"] = self.message
        return out


def validate_graph(g: DynamicWeightedGraph) -> list[Violation]:
    """Check every structural invariant; empty list means the graph is well formed.

    Diagnostics, not exceptions: callers that need a hard failure wrap the
    result in :class:`InvalidGraphError`.
    """
    violations: list[Violation] = []
    universe = set(g.nodes)

    seen_ids: set[str] = set()
    for n in g.nodes:
        if not n:
            violations.append(Violation("empty_node_id", node=n))
        if n in seen_ids:
            violations.append(Violation("duplicate_node", node=n))
        seen_ids.add(n)

    incident: set[str] = set()
    for t, snap in enumerate(g.snapshots):
        if snap.index != t:
            violations.append(
                Violation("bad_snapshot_index", timeslice=t, message=f"index {snap.index}, expected {t}")
            )
        pairs: set[tuple[str, str]] = set()
        for u, v, w in snap.edges:
            if u == v:
                violations.append(Violation("self_loop", timeslice=t, node=u))
                continue
            if u > v:
                violations.append(Violation("noncanonical_pair", timeslice=t, edge=(u, v)))
            key = canonical_pair(u, v)
            if key in pairs:
                violations.append(Violation("duplicate_pair", timeslice=t, edge=key))
            pairs.add(key)
            if not math.isfinite(w):
                violations.append(Violation("nonfinite_weight", timeslice=t, edge=key))
            elif w == 0.0:
                violations.append(Violation("zero_weight", timeslice=t, edge=key))
            for endpoint in (u, v):
                if endpoint not in universe:
                    violations.append(Violation("unknown_node", timeslice=t, node=endpoint))
            incident.add(u)
            incident.add(v)

    # The universe is defined as the endpoint union, so a node that never
    # carries an edge anywhere does not belong in it.
    for n in g.nodes:
        if n not in incident:
            violations.append(Violation("isolated_node", node=n))

    return violations


def _sorted_edges(snap: GraphSnapshot) -> list[Edge]:
    return sorted(snap.edges, key=lambda e: (e[0], e[1]))


def compute_diff_sequence(g: DynamicWeightedGraph, epsilon: float = 0.0) -> list[GraphDiff]:
    """Per-transition weight deltas, one diff per adjacent snapshot pair.

    A pair is reported iff its weights differ by more than ``epsilon``
    (default 0: any exact difference counts); delta is new minus old with
    absent edges read as 0. Raises :class:`InvalidGraphError` when the graph
    fails validation or has fewer than two timeslices.
    """
    violations = validate_graph(g)
    if violations:
        raise InvalidGraphError(violations)
    if g.timeslice_count < 2:
        raise InvalidGraphError([Violation("too_few_timeslices", message="need T >= 2")])

    diffs: list[GraphDiff] = []
    prev = _sorted_edges(g.snapshots[0])
    for i in range(1, g.timeslice_count):
        cur = _sorted_edges(g.snapshots[i])
        edges: list[DiffEdge] = []
        a = b = 0
        while a < len(prev) or b < len(cur):
            if b >= len(cur) or (a < len(prev) and prev[a][:2] < cur[b][:2]):
                u, v, w = prev[a]
                delta = -w
                a += 1
            elif a >= len(prev) or prev[a][:2] > cur[b][:2]:
                u, v, w = cur[b]
                delta = w
                b += 1
            else:
                u, v, old = prev[a]
                new = cur[b][2]
                delta = new - old
                a += 1
                b += 1
            if abs(delta) > epsilon:
                edges.append(DiffEdge(u, v, delta))
        diffs.append(GraphDiff(transition_index=i, edges=tuple(edges)))
        prev = cur
    return diffs


def apply_diff(s: GraphSnapshot, d: GraphDiff, label: str | None = None) -> GraphSnapshot:
    """Advance a snapshot by one diff; the inverse of diff computation.

    Pairs whose weight lands on exactly 0 are dropped. The label carries over
    unless a new one is given.
    """
    if d.transition_index != s.index + 1:
        raise IndexMismatchError(
            f"diff for transition {d.transition_index} cannot follow snapshot {s.index}"
        )
    weights = s.weights()
    for e in d.edges:
        key = (e.u, e.v)
        new = weights.get(key, 0.0) + e.delta
        if new == 0.0:
            weights.pop(key, None)
        else:
            weights[key] = new
    return snapshot(s.index + 1, s.label if label is None else label, weights)


def node_presence(g: DynamicWeightedGraph, n: str) -> list[bool]:
    """True at each timeslice where the node carries at least one edge."""
    if n not in g.nodes:
        raise UnknownNodeError(f"node {n!r} is not in the universe")
    out = []
    for snap in g.snapshots:
        out.append(any(n == u or n == v for u, v, _ in snap.edges))
    return out


def node_index(g: DynamicWeightedGraph) -> dict[str, int]:
    """Node id -> position in the universe order."""
    return {n: i for i, n in enumerate(g.nodes)}


def weight_stack(g: DynamicWeightedGraph) -> np.ndarray:
    """Dense symmetric adjacency per timeslice, shape (T, n, n), zero diagonal.

    The dense form is the workhorse for the numeric pipeline (reordering,
    timeline projection); node axis follows the universe order.
    """
    idx = node_index(g)
    n = len(g.nodes)
    stack = np.zeros((g.timeslice_count, n, n), dtype=np.float64)
    for t, snap in enumerate(g.snapshots):
        for u, v, w in snap.edges:
            a, b = idx[u], idx[v]
            stack[t, a, b] = w
            stack[t, b, a] = w
    return stack


def diff_stack(stack: np.ndarray) -> np.ndarray:
    """Adjacent differences of a weight stack: entry t is snapshot t+1 minus t."""
    return stack[1:] - stack[:-1]
