"""Command-line front door: ingest datasets, run the pipeline, serve HTTP.

Exit codes: 0 success, 2 for user or input errors (bad files, bad
parameters), 1 for anything unexpected. All artifacts are canonical JSON,
so rerunning a command produces byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ingest
from .aggregate import build_charts, build_overview
from .errors import DiffseerError, InvalidGraphError, ParseError
from .io import load_dataset, save_dataset, write_canonical_json
from .mask import MaskConfig, build_paths, select_highlights
from .model import compute_diff_sequence
from .payloads import (
    PAYLOAD_VERSION,
    charts_payload,
    mask_payload,
    ordering_payload,
    overview_payload,
    timeline_payload,
)
from .reorder import order_nodes
from .timeline import project_timeline

__all__ = ["main", "cmd_ingest", "cmd_analyze", "cmd_serve"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffseer",
        description="Dynamic weighted graph differences: ingest, analyze, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser(
        "ingest", help="convert an edge-list or series CSV to canonical dataset JSON"
    )
    p_ingest.add_argument("input", help="path to the input CSV")
    p_ingest.add_argument("-o", "--output", required=True, help="output JSON path")
    p_ingest.add_argument(
        "--kind",
        choices=("edge-list", "series"),
        default="edge-list",
        help="input format (default: edge-list)",
    )
    p_ingest.add_argument(
        "--window",
        type=int,
        default=ingest.DEFAULT_WINDOW,
        help=f"correlation window length for series input (default: {ingest.DEFAULT_WINDOW})",
    )
    p_ingest.add_argument(
        "--step",
        type=int,
        default=ingest.DEFAULT_STEP,
        help=f"window step for series input (default: {ingest.DEFAULT_STEP})",
    )
    p_ingest.add_argument(
        "--min-abs-weight",
        type=float,
        default=0.0,
        help="drop correlation edges below this magnitude (default: 0, keep all)",
    )
    p_ingest.add_argument(
        "--aggregation",
        choices=("sum", "last"),
        default="sum",
        help="how to merge duplicate edge rows (default: sum)",
    )

    p_analyze = sub.add_parser(
        "analyze", help="run the full pipeline headlessly and write JSON artifacts"
    )
    p_analyze.add_argument("dataset", help="path to a canonical dataset JSON file")
    p_analyze.add_argument(
        "-o", "--output-dir", required=True, help="directory for the artifacts"
    )
    p_analyze.add_argument("--from", dest="from_", type=int, default=None,
                           help="first transition index (default: 1)")
    p_analyze.add_argument("--to", type=int, default=None,
                           help="last transition index (default: T-1)")
    p_analyze.add_argument("--alpha", type=float, default=0.5,
                           help="blend weight between overview and detail distances (default: 0.5)")
    p_analyze.add_argument(
        "--detail-source",
        choices=("original", "difference"),
        default="original",
        help="grids feeding the detail distance (default: original)",
    )
    p_analyze.add_argument(
        "--criterion",
        choices=("avgChange", "changedEdgeCount"),
        default="avgChange",
        help="mask criterion (default: avgChange)",
    )
    p_analyze.add_argument("--threshold", type=float, default=1.0,
                           help="mask threshold (default: 1.0)")
    p_analyze.add_argument("--gap-limit", type=int, default=3,
                           help="largest column gap a cross-column path may span (default: 3)")

    p_serve = sub.add_parser(
        "serve", help="start the HTTP service",
        epilog="Set $DIFFSEER_UI_DIR to also serve a built web client at /.")
    p_serve.add_argument("--data-dir", default=None,
                         help="dataset directory (default: $DIFFSEER_DATA_DIR or ./diffseer-data)")
    p_serve.add_argument("--port", type=int, default=None,
                         help="port (default: $DIFFSEER_PORT or 8791)")
    p_serve.add_argument("--host", default="127.0.0.1", help="bind address")

    return parser


def cmd_ingest(args) -> int:
    path = Path(args.input)
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            if args.kind == "edge-list":
                g = ingest.parse_edge_list(fh, aggregation=args.aggregation)
            else:
                table = ingest.parse_series_csv(fh)
                g = ingest.build_correlation_network(
                    table,
                    window=args.window,
                    step=args.step,
                    min_abs_weight=args.min_abs_weight,
                )
    except OSError as exc:
        print(f"diffseer: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"diffseer: {path}: {exc}", file=sys.stderr)
        return 2
    except InvalidGraphError as exc:
        print(f"diffseer: {path}: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return 2
    except DiffseerError as exc:
        print(f"diffseer: {path}: {exc}", file=sys.stderr)
        return 2

    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_dataset(out, g)
    print(f"wrote {out} ({g.node_count} nodes, {g.timeslice_count} timeslices)")
    return 0


def cmd_analyze(args) -> int:
    path = Path(args.dataset)
    try:
        g = load_dataset(path)
        diffs = compute_diff_sequence(g)
        t_range = None
        if args.from_ is not None or args.to is not None:
            t_range = (
                args.from_ if args.from_ is not None else 1,
                args.to if args.to is not None else len(diffs),
            )
        cfg = MaskConfig(
            criterion=args.criterion,
            threshold=args.threshold,
            gap_limit=args.gap_limit,
        )
        ordering = order_nodes(g, diffs, t_range, args.alpha, args.detail_source)
        ov = build_overview(diffs, ordering.permutation, t_range)
        charts = build_charts(diffs, ordering.permutation, t_range)
        mask_ov = build_overview(diffs, g.nodes, t_range)
        highlights = select_highlights(mask_ov, cfg)
        paths = build_paths(highlights, list(mask_ov.transitions), cfg, g.nodes)
        proj = project_timeline(g)
    except OSError as exc:
        print(f"diffseer: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return 2
    except DiffseerError as exc:
        print(f"diffseer: {exc}", file=sys.stderr)
        return 2

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_canonical_json(
        out_dir / "overview.json",
        {
            "version": PAYLOAD_VERSION,
            "overview": overview_payload(ov),
            "charts": charts_payload(charts),
        },
    )
    write_canonical_json(out_dir / "ordering.json", ordering_payload(ordering))
    write_canonical_json(out_dir / "mask.json", mask_payload(highlights, paths, cfg))
    write_canonical_json(out_dir / "timeline.json", timeline_payload(proj, g.labels))
    print(f"wrote 4 artifacts to {out_dir}")
    return 0


def cmd_serve(args) -> int:
    import os
    import socket

    from . import service

    port = args.port
    if port is None:
        port = int(os.environ.get("DIFFSEER_PORT", service.DEFAULT_PORT))
    # fail fast with a clear message instead of uvicorn's SystemExit
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, port))
    except OSError as exc:
        print(f"diffseer: cannot bind {args.host}:{port}: {exc}", file=sys.stderr)
        return 2
    finally:
        probe.close()

    try:
        service.run(data_dir=args.data_dir, port=port, host=args.host)
    except OSError as exc:
        print(f"diffseer: cannot bind: {exc}", file=sys.stderr)
        return 2
    except SystemExit:
        print(f"diffseer: server failed to start on {args.host}:{port}", file=sys.stderr)
        return 2
    except DiffseerError as exc:
        print(f"diffseer: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"ingest": cmd_ingest, "analyze": cmd_analyze, "serve": cmd_serve}[
        args.command
    ]
    try:
        return handler(args)
    except KeyboardInterrupt:
        return 130
    except Exception as exc:  # anything unhandled is an internal error
        print(f"diffseer: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
