"""Canonical dataset JSON format and byte-stable JSON serialization.

Dataset format (version 1)::

    {
      "version": 1,
      "nodes": ["A", "B", ...],
      "timeslices": ["2015-03-01", ...],
      "snapshots": [ [ [u, v, w], ... ], ... ]
    }

``snapshots`` is indexed by timeslice; each edge triple has ``u < v``. Files
written here are deterministic: keys sorted, floats rendered with 12
significant digits, no whitespace. Two runs over the same data produce
byte-identical output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import InvalidGraphError, ParseError
from .model import DynamicWeightedGraph, GraphSnapshot, validate_graph

__all__ = [
    "DATASET_VERSION",
    "graph_to_payload",
    "graph_from_payload",
    "load_dataset",
    "save_dataset",
    "canonical_json_bytes",
    "write_canonical_json",
]

DATASET_VERSION = 1

# Floats are rounded to 12 significant digits before encoding so artifact
# bytes do not depend on the platform's low-order arithmetic.
_FLOAT_DIGITS = 12


def _canonical_value(obj: Any) -> Any:
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite value {obj!r} cannot be serialized")
        return float(f"{obj:.{_FLOAT_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _canonical_value(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical_value(v) for v in obj]
    return obj


def canonical_json_bytes(obj: Any) -> bytes:
    """Serialize to deterministic UTF-8 JSON (sorted keys, 12 sig-digit floats)."""
    return json.dumps(
        _canonical_value(obj), sort_keys=True, separators=(",", ":"), allow_nan=False
    ).encode("utf-8")


def write_canonical_json(path: str | Path, obj: Any) -> None:
    Path(path).write_bytes(canonical_json_bytes(obj) + b"\n")


def graph_to_payload(g: DynamicWeightedGraph) -> dict:
    """Dataset-format dict for a graph."""
    return {
        "version": DATASET_VERSION,
        "nodes": list(g.nodes),
        "timeslices": list(g.labels),
        "snapshots": [[[u, v, w] for u, v, w in s.edges] for s in g.snapshots],
    }


def graph_from_payload(payload: Any, validate: bool = True) -> DynamicWeightedGraph:
    """Parse a dataset-format dict; validates invariants unless told not to."""
    if not isinstance(payload, dict):
        raise ParseError(1, "dataset must be a JSON object")
    version = payload.get("version")
    if version != DATASET_VERSION:
        raise ParseError(1, f"unsupported dataset version {version!r}")
    nodes = payload.get("nodes")
    labels = payload.get("timeslices")
    snapshots = payload.get("snapshots")
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise ParseError(1, "'nodes' must be a list of strings")
    if not isinstance(labels, list) or not all(isinstance(t, str) for t in labels):
        raise ParseError(1, "'timeslices' must be a list of strings")
    if not isinstance(snapshots, list) or len(snapshots) != len(labels):
        raise ParseError(1, "'snapshots' must be a list parallel to 'timeslices'")

    snaps = []
    for t, edge_list in enumerate(snapshots):
        if not isinstance(edge_list, list):
            raise ParseError(1, f"snapshot {t} must be a list of edge triples")
        edges = []
        for item in edge_list:
            if (
                not isinstance(item, list)
                or len(item) != 3
                or not isinstance(item[0], str)
                or not isinstance(item[1], str)
                or not isinstance(item[2], (int, float))
                or isinstance(item[2], bool)
            ):
                raise ParseError(1, f"snapshot {t} contains a malformed edge triple: {item!r}")
            edges.append((item[0], item[1], float(item[2])))
        # stored canonically; do not re-canonicalize so validation can see defects
        snaps.append(GraphSnapshot(index=t, label=labels[t], edges=tuple(edges)))

    g = DynamicWeightedGraph(nodes=tuple(nodes), snapshots=tuple(snaps))
    if validate:
        violations = validate_graph(g)
        if violations:
            raise InvalidGraphError(violations)
    return g


def load_dataset(path: str | Path, validate: bool = True) -> DynamicWeightedGraph:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from exc
    return graph_from_payload(payload, validate=validate)


def save_dataset(path: str | Path, g: DynamicWeightedGraph) -> None:
    write_canonical_json(path, graph_to_payload(g))
