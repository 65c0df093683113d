"""Parsers that turn external data into dynamic weighted graphs.

Two input shapes are supported:

* temporal edge lists (``time,source,target,weight`` CSV), one snapshot per
  distinct time label in first-appearance order;
* raw time-series tables (one column per entity), turned into a rolling
  correlation network: each snapshot holds the Pearson correlation of every
  entity pair over a trailing window.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import (
    DomainError,
    EmptyInputError,
    InsufficientDataError,
    NonFiniteValueError,
    ParseError,
)
from .model import DynamicWeightedGraph, canonical_pair, dynamic_graph

__all__ = [
    "EdgeListRecord",
    "SeriesTable",
    "parse_edge_list",
    "parse_series_csv",
    "build_correlation_network",
]

EDGE_LIST_HEADER = ("time", "source", "target", "weight")

DEFAULT_WINDOW = 20
DEFAULT_STEP = 1


@dataclass(frozen=True, slots=True)
class EdgeListRecord:
    """One parsed edge-list row."""

    time: str
    source: str
    target: str
    weight: float


@dataclass(frozen=True)
class SeriesTable:
    """Entity-by-time matrix of observations; NaN marks a missing value."""

    entities: tuple[str, ...]
    times: tuple[str, ...]
    values: np.ndarray  # shape (len(entities), len(times))

    def __post_init__(self):
        if self.values.shape != (len(self.entities), len(self.times)):
            raise ValueError(
                f"values shape {self.values.shape} does not match "
                f"{len(self.entities)} entities x {len(self.times)} times"
            )

    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())


def _iter_rows(stream: Iterable[str]) -> Iterable[list[str]]:
    return csv.reader(stream)


def parse_edge_list(
    stream: Iterable[str], aggregation: Literal["sum", "last"] = "sum"
) -> DynamicWeightedGraph:
    """Parse a ``time,source,target,weight`` CSV into a dynamic graph.

    One snapshot per distinct time label, ordered by first appearance.
    Duplicate (time, pair) rows are combined by ``aggregation``: ``sum``
    (default, suits event counts) or ``last``. The node universe is the sorted
    union of endpoints.
    """
    if aggregation not in ("sum", "last"):
        raise DomainError(f"unknown aggregation {aggregation!r}")

    reader = _iter_rows(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyInputError("edge list stream is empty") from None
    if tuple(h.strip() for h in header) != EDGE_LIST_HEADER:
        raise ParseError(1, f"expected header {','.join(EDGE_LIST_HEADER)!r}, got {','.join(header)!r}")

    labels: list[str] = []
    per_label: dict[str, dict[tuple[str, str], float]] = {}
    count = 0
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != 4:
            raise ParseError(lineno, f"expected 4 fields, got {len(row)}")
        time, source, target, weight_text = (f.strip() for f in row)
        if not source or not target:
            raise ParseError(lineno, "source and target must be non-empty")
        if source == target:
            raise ParseError(lineno, f"self loop on {source!r}")
        try:
            weight = float(weight_text)
        except ValueError:
            raise ParseError(lineno, f"unparseable weight {weight_text!r}") from None
        if not math.isfinite(weight):
            raise ParseError(lineno, f"weight must be finite, got {weight_text!r}")
        record = EdgeListRecord(time, source, target, weight)

        if record.time not in per_label:
            per_label[record.time] = {}
            labels.append(record.time)
        pair = canonical_pair(record.source, record.target)
        bucket = per_label[record.time]
        if aggregation == "sum":
            bucket[pair] = bucket.get(pair, 0.0) + record.weight
        else:
            bucket[pair] = record.weight
        count += 1

    if count == 0:
        raise EmptyInputError("edge list contains no data rows")

    return dynamic_graph(labels, [per_label[t] for t in labels])


def parse_series_csv(stream: Iterable[str]) -> SeriesTable:
    """Parse a series CSV: first column ``time``, one column per entity.

    Empty cells are missing values; explicit non-finite numbers are rejected.
    """
    reader = _iter_rows(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyInputError("series stream is empty") from None
    header = [h.strip() for h in header]
    if len(header) < 2 or header[0] != "time":
        raise ParseError(1, "expected header 'time,<entity>,...'")
    entities = tuple(header[1:])
    if any(not e for e in entities):
        raise ParseError(1, "entity column names must be non-empty")
    if len(set(entities)) != len(entities):
        raise ParseError(1, "duplicate entity column names")

    times: list[str] = []
    columns: list[list[float]] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise ParseError(lineno, f"expected {len(header)} fields, got {len(row)}")
        times.append(row[0].strip())
        obs = []
        for cell in row[1:]:
            cell = cell.strip()
            if not cell:
                obs.append(math.nan)
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(lineno, f"unparseable value {cell!r}") from None
            if not math.isfinite(value):
                raise NonFiniteValueError(f"line {lineno}: non-finite value {cell!r}")
            obs.append(value)
        columns.append(obs)

    if not times:
        raise EmptyInputError("series contains no data rows")

    values = np.asarray(columns, dtype=np.float64).T  # (entities, times)
    return SeriesTable(entities=entities, times=tuple(times), values=values)


def build_correlation_network(
    table: SeriesTable,
    window: int = DEFAULT_WINDOW,
    step: int = DEFAULT_STEP,
    min_abs_weight: float = 0.0,
) -> DynamicWeightedGraph:
    """Rolling Pearson correlation network over a trailing window.

    One snapshot per window end position (first at index ``window - 1``,
    advancing by ``step``), labeled with that position's time label. An edge
    joins each entity pair whose series are both complete and non-constant in
    the window; its weight is their Pearson correlation, clamped to [-1, 1].
    Pairs with exactly zero correlation are omitted (weight 0 means no edge),
    as are pairs below ``min_abs_weight`` when a threshold is set. Entities
    that never acquire an edge are dropped from the universe.
    """
    if window < 3:
        raise DomainError(f"window must be >= 3, got {window}")
    if step < 1:
        raise DomainError(f"step must be >= 1, got {step}")
    n, t_total = table.values.shape
    if t_total < window:
        raise InsufficientDataError(
            f"{t_total} observations but window is {window}"
        )
    if np.isinf(table.values).any():
        raise NonFiniteValueError("series table contains infinite values")

    labels: list[str] = []
    edge_maps: list[dict[tuple[str, str], float]] = []
    for end in range(window - 1, t_total, step):
        sub = table.values[:, end - window + 1 : end + 1]
        complete = ~np.isnan(sub).any(axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            spread = np.nanstd(sub, axis=1)
            corr = np.corrcoef(sub)
        usable = complete & (spread > 0.0)

        edges: dict[tuple[str, str], float] = {}
        for i in range(n):
            if not usable[i]:
                continue
            for j in range(i + 1, n):
                if not usable[j]:
                    continue
                r = float(corr[i, j])
                if not math.isfinite(r):
                    continue
                r = max(-1.0, min(1.0, r))
                if r == 0.0 or abs(r) < min_abs_weight:
                    continue
                edges[canonical_pair(table.entities[i], table.entities[j])] = r
        labels.append(table.times[end])
        edge_maps.append(edges)

    touched: set[str] = set()
    for edges in edge_maps:
        for u, v in edges:
            touched.add(u)
            touched.add(v)
    universe = tuple(e for e in table.entities if e in touched)
    return dynamic_graph(labels, edge_maps, nodes=universe)
