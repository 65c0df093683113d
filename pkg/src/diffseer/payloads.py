"""JSON-ready dict builders for every wire artifact.

These produce plain dicts; byte-level canonicalization (sorted keys, fixed
float formatting) happens in :mod:`diffseer.io` when the dicts are encoded.
Field names here are the published contract and must not drift.
"""

from __future__ import annotations

from typing import Sequence

from .aggregate import ChartSeries, DetailMatrix, OverviewMatrix
from .mask import CrossColumnPath, Highlight, MaskConfig, WithinColumnPath
from .reorder import NodeOrdering
from .timeline import TimelineProjection

__all__ = [
    "PAYLOAD_VERSION",
    "overview_payload",
    "charts_payload",
    "detail_payload",
    "ordering_payload",
    "mask_payload",
    "timeline_payload",
]

PAYLOAD_VERSION = 1


def overview_payload(ov: OverviewMatrix) -> dict:
    cells = []
    for r, node in enumerate(ov.node_order):
        row = []
        for c, t in enumerate(ov.transitions):
            row.append(
                {
                    "node": node,
                    "transitionIndex": t,
                    "posCount": int(ov.pos_counts[r, c]),
                    "negCount": int(ov.neg_counts[r, c]),
                    "avgChange": float(ov.avg_change[r, c]),
                    "avgPos": float(ov.avg_pos[r, c]),
                    "avgNeg": float(ov.avg_neg[r, c]),
                }
            )
        cells.append(row)
    return {
        "version": PAYLOAD_VERSION,
        "nodeOrder": list(ov.node_order),
        "transitions": list(ov.transitions),
        "cells": cells,
    }


def charts_payload(cs: ChartSeries) -> dict:
    return {
        "version": PAYLOAD_VERSION,
        "stackedBars": [
            {"t": t, "posEdges": int(p), "negEdges": int(n)}
            for t, p, n in zip(cs.transitions, cs.pos_edges, cs.neg_edges)
        ],
        "areaPerNode": [
            {"node": node, "changedEdges": int(a)}
            for node, a in zip(cs.node_order, cs.area)
        ],
    }


def detail_payload(dm: DetailMatrix) -> dict:
    return {
        "version": PAYLOAD_VERSION,
        "kind": dm.kind,
        "timeIndex": dm.time_index,
        "nodeOrder": list(dm.node_order),
        "values": [[float(x) for x in row] for row in dm.values],
    }


def ordering_payload(o: NodeOrdering) -> dict:
    return {
        "alpha": None if o.alpha is None else float(o.alpha),
        "permutation": list(o.permutation),
        "objective": float(o.objective),
    }


def _path_payload(p: WithinColumnPath | CrossColumnPath) -> dict:
    if isinstance(p, WithinColumnPath):
        return {
            "kind": "withinColumn",
            "column": p.column,
            "sign": p.sign,
            "nodes": list(p.nodes),
        }
    return {
        "kind": "crossColumn",
        "node": p.node,
        "fromColumn": p.from_column,
        "fromSign": p.from_sign,
        "toColumn": p.to_column,
        "toSign": p.to_sign,
    }


def mask_payload(
    highlights: Sequence[Highlight],
    paths: Sequence[WithinColumnPath | CrossColumnPath],
    cfg: MaskConfig,
) -> dict:
    return {
        "version": PAYLOAD_VERSION,
        "criterion": cfg.criterion,
        "threshold": float(cfg.threshold),
        "gapLimit": int(cfg.gap_limit),
        "highlights": [
            {"node": h.node, "transitionIndex": h.transition_index, "sign": h.sign}
            for h in highlights
        ],
        "paths": [_path_payload(p) for p in paths],
    }


def timeline_payload(proj: TimelineProjection, labels: Sequence[str]) -> list[dict]:
    return [
        {
            "t": p.time_index,
            "offset": float(p.offset),
            "intensity": float(p.change_intensity),
            "label": labels[p.time_index],
        }
        for p in proj.points
    ]
