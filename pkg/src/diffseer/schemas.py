"""Published JSON Schemas (draft 2020-12) for every wire artifact.

Responses served over HTTP and artifacts written by the command line must
validate against these. Tests load them; clients may too.
"""

from __future__ import annotations

__all__ = ["SCHEMAS"]

_NODE_ID = {"type": "string", "minLength": 1}
_SIGN = {"enum": ["positive", "negative"]}

_CELL = {
    "type": "object",
    "required": ["node", "transitionIndex", "posCount", "negCount", "avgChange", "avgPos", "avgNeg"],
    "additionalProperties": False,
    "properties": {
        "node": _NODE_ID,
        "transitionIndex": {"type": "integer", "minimum": 1},
        "posCount": {"type": "integer", "minimum": 0},
        "negCount": {"type": "integer", "minimum": 0},
        "avgChange": {"type": "number"},
        "avgPos": {"type": "number", "minimum": 0},
        "avgNeg": {"type": "number", "maximum": 0},
    },
}

OVERVIEW_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "nodeOrder", "transitions", "cells"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "nodeOrder": {"type": "array", "items": _NODE_ID},
        "transitions": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "cells": {"type": "array", "items": {"type": "array", "items": _CELL}},
    },
}

CHARTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "stackedBars", "areaPerNode"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "stackedBars": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["t", "posEdges", "negEdges"],
                "additionalProperties": False,
                "properties": {
                    "t": {"type": "integer", "minimum": 1},
                    "posEdges": {"type": "integer", "minimum": 0},
                    "negEdges": {"type": "integer", "minimum": 0},
                },
            },
        },
        "areaPerNode": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["node", "changedEdges"],
                "additionalProperties": False,
                "properties": {
                    "node": _NODE_ID,
                    "changedEdges": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}

ORDERING_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["alpha", "permutation", "objective"],
    "additionalProperties": False,
    "properties": {
        "alpha": {
            "anyOf": [
                {"type": "number", "minimum": 0, "maximum": 1},
                {"type": "null"},
            ]
        },
        "permutation": {"type": "array", "items": _NODE_ID},
        "objective": {"type": "number", "minimum": 0},
    },
}

DETAIL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "kind", "timeIndex", "nodeOrder", "values"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "kind": {"enum": ["difference", "original"]},
        "timeIndex": {"type": "integer", "minimum": 0},
        "nodeOrder": {"type": "array", "items": _NODE_ID},
        "values": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
    },
}

MASK_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "criterion", "threshold", "gapLimit", "highlights", "paths"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "criterion": {"enum": ["avgChange", "changedEdgeCount"]},
        "threshold": {"type": "number", "exclusiveMinimum": 0},
        "gapLimit": {"type": "integer", "minimum": 0},
        "highlights": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["node", "transitionIndex", "sign"],
                "additionalProperties": False,
                "properties": {
                    "node": _NODE_ID,
                    "transitionIndex": {"type": "integer", "minimum": 1},
                    "sign": _SIGN,
                },
            },
        },
        "paths": {
            "type": "array",
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["kind", "column", "sign", "nodes"],
                        "additionalProperties": False,
                        "properties": {
                            "kind": {"const": "withinColumn"},
                            "column": {"type": "integer", "minimum": 1},
                            "sign": _SIGN,
                            "nodes": {"type": "array", "minItems": 2, "items": _NODE_ID},
                        },
                    },
                    {
                        "type": "object",
                        "required": ["kind", "node", "fromColumn", "fromSign", "toColumn", "toSign"],
                        "additionalProperties": False,
                        "properties": {
                            "kind": {"const": "crossColumn"},
                            "node": _NODE_ID,
                            "fromColumn": {"type": "integer", "minimum": 1},
                            "fromSign": _SIGN,
                            "toColumn": {"type": "integer", "minimum": 1},
                            "toSign": _SIGN,
                        },
                    },
                ]
            },
        },
    },
}

TIMELINE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["t", "offset", "intensity", "label"],
        "additionalProperties": False,
        "properties": {
            "t": {"type": "integer", "minimum": 0},
            "offset": {"type": "number"},
            "intensity": {"type": "number", "minimum": 0},
            "label": {"type": "string"},
        },
    },
}

DATASET_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "nodes", "timeslices", "snapshots"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "nodes": {"type": "array", "minItems": 1, "items": _NODE_ID},
        "timeslices": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "snapshots": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [_NODE_ID, _NODE_ID, {"type": "number"}],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
        },
    },
}

HANDLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["id", "name", "nodeCount", "timesliceCount", "createdAt"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string", "pattern": "^[0-9a-f]{12}$"},
        "name": {"type": "string"},
        "nodeCount": {"type": "integer", "minimum": 1},
        "timesliceCount": {"type": "integer", "minimum": 1},
        "createdAt": {"type": "string"},
    },
}

HANDLES_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": {k: v for k, v in HANDLE_SCHEMA.items() if k != "$schema"},
}

def _embed(schema: dict) -> dict:
    # subschemas must not carry their own $schema marker
    return {k: v for k, v in schema.items() if k != "$schema"}


OVERVIEW_RESPONSE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "overview", "ordering", "charts"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "overview": _embed(OVERVIEW_SCHEMA),
        "ordering": _embed(ORDERING_SCHEMA),
        "charts": _embed(CHARTS_SCHEMA),
    },
}

ERROR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["code", "message", "details"],
    "additionalProperties": False,
    "properties": {
        "code": {"type": "string"},
        "message": {"type": "string"},
        "details": {},
    },
}

SCHEMAS = {
    "overview": OVERVIEW_SCHEMA,
    "charts": CHARTS_SCHEMA,
    "ordering": ORDERING_SCHEMA,
    "detail": DETAIL_SCHEMA,
    "mask": MASK_SCHEMA,
    "timeline": TIMELINE_SCHEMA,
    "dataset": DATASET_SCHEMA,
    "handle": HANDLE_SCHEMA,
    "handles": HANDLES_SCHEMA,
    "overviewResponse": OVERVIEW_RESPONSE_SCHEMA,
    "error": ERROR_SCHEMA,
}
