"""Differences between adjacent timeslices of dynamic weighted graphs.

The pipeline: ingest raw CSV into a snapshot sequence, compute the diff
sequence, aggregate it into overview/detail matrices and chart series,
reorder nodes by blended similarity, highlight large changes with the
difference mask, and project the whole period onto a 1-D timeline. The
HTTP service and CLI expose the same operations for the explorer UI.
"""

from .errors import (
    AlphaOutOfRangeError,
    DiffseerError,
    DimensionError,
    DomainError,
    EmptyInputError,
    IndexMismatchError,
    InsufficientDataError,
    InvalidGraphError,
    NodeSetMismatchError,
    NonFiniteDistanceError,
    NonFiniteValueError,
    ParseError,
    RangeError,
    UnknownNodeError,
)
from .model import (
    DiffEdge,
    DynamicWeightedGraph,
    GraphDiff,
    GraphSnapshot,
    Violation,
    apply_diff,
    canonical_pair,
    compute_diff_sequence,
    dynamic_graph,
    node_presence,
    snapshot,
    validate_graph,
)
from .io import (
    canonical_json_bytes,
    graph_from_payload,
    graph_to_payload,
    load_dataset,
    save_dataset,
)
from .ingest import (
    SeriesTable,
    build_correlation_network,
    parse_edge_list,
    parse_series_csv,
)
from .aggregate import (
    ChartSeries,
    DetailMatrix,
    OverviewCell,
    OverviewMatrix,
    build_charts,
    build_detail,
    build_overview,
    color_scale,
)
from .reorder import (
    DistanceMatrix,
    NodeOrdering,
    blend,
    detail_distance,
    leaf_order,
    order_nodes,
    overview_distance,
    row_similarity,
)
from .mask import (
    CrossColumnPath,
    Highlight,
    MaskConfig,
    WithinColumnPath,
    build_paths,
    select_highlights,
)
from .timeline import TimelinePoint, TimelineProjection, project_timeline

# diffseer.service (FastAPI app) and diffseer.cli are imported on demand;
# the engine itself stays importable without the web stack.

__version__ = "0.1.0"

__all__ = [
    "AlphaOutOfRangeError",
    "DiffseerError",
    "DimensionError",
    "DomainError",
    "EmptyInputError",
    "IndexMismatchError",
    "InsufficientDataError",
    "InvalidGraphError",
    "NodeSetMismatchError",
    "NonFiniteDistanceError",
    "NonFiniteValueError",
    "ParseError",
    "RangeError",
    "UnknownNodeError",
    "DiffEdge",
    "DynamicWeightedGraph",
    "GraphDiff",
    "GraphSnapshot",
    "Violation",
    "apply_diff",
    "canonical_pair",
    "compute_diff_sequence",
    "dynamic_graph",
    "node_presence",
    "snapshot",
    "validate_graph",
    "canonical_json_bytes",
    "graph_from_payload",
    "graph_to_payload",
    "load_dataset",
    "save_dataset",
    "SeriesTable",
    "build_correlation_network",
    "parse_edge_list",
    "parse_series_csv",
    "ChartSeries",
    "DetailMatrix",
    "OverviewCell",
    "OverviewMatrix",
    "build_charts",
    "build_detail",
    "build_overview",
    "color_scale",
    "DistanceMatrix",
    "NodeOrdering",
    "blend",
    "detail_distance",
    "leaf_order",
    "order_nodes",
    "overview_distance",
    "row_similarity",
    "MaskConfig",
    "Highlight",
    "WithinColumnPath",
    "CrossColumnPath",
    "build_paths",
    "select_highlights",
    "TimelinePoint",
    "TimelineProjection",
    "project_timeline",
    "__version__",
]
