"""HTTP/JSON service exposing datasets and the computed views.

Datasets live as canonical JSON files in a data directory; ids are content
hashes, so re-uploading the same graph is a no-op. Responses are rendered
through the canonical encoder and cached per (dataset, parameters), which
makes repeated GETs byte-identical by construction.

Environment: DIFFSEER_DATA_DIR (storage), DIFFSEER_PORT (default port),
DIFFSEER_MAX_UPLOAD_BYTES (upload cap), DIFFSEER_UI_DIR (optional static
directory for a web client, mounted at /).
"""

from __future__ import annotations

import hashlib
import io as _stdio
import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError

from . import ingest
from .aggregate import build_charts, build_detail, build_overview
from .errors import DiffseerError, DomainError, InvalidGraphError, ParseError
from .io import canonical_json_bytes, graph_from_payload, graph_to_payload
from .mask import MaskConfig, build_paths, select_highlights
from .model import DynamicWeightedGraph, compute_diff_sequence
from .payloads import (
    PAYLOAD_VERSION,
    charts_payload,
    detail_payload,
    mask_payload,
    ordering_payload,
    overview_payload,
    timeline_payload,
)
from .reorder import order_nodes
from .timeline import project_timeline

__all__ = ["DatasetHandle", "DatasetStore", "create_app", "run", "DEFAULT_PORT"]

DEFAULT_PORT = 8791
DEFAULT_MAX_UPLOAD = 16 * 1024 * 1024
_ID_LENGTH = 12


@dataclass(frozen=True, slots=True)
class DatasetHandle:
    id: str
    name: str
    node_count: int
    timeslice_count: int
    created_at: str

    def to_payload(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "nodeCount": self.node_count,
            "timesliceCount": self.timeslice_count,
            "createdAt": self.created_at,
        }


@dataclass
class _Entry:
    handle: DatasetHandle
    graph: DynamicWeightedGraph
    diffs: list | None = None
    cache: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def diff_sequence(self):
        with self.lock:
            if self.diffs is None:
                self.diffs = compute_diff_sequence(self.graph)
            return self.diffs


def dataset_id(g: DynamicWeightedGraph) -> str:
    digest = hashlib.sha256(canonical_json_bytes(graph_to_payload(g))).hexdigest()
    return digest[:_ID_LENGTH]


class DatasetStore:
    """Disk-backed dataset registry; all mutation behind one lock."""

    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._entries: dict[str, _Entry] = {}
        self._load_existing()

    def _load_existing(self):
        for path in sorted(self.data_dir.glob("*.json")):
            if path.name.endswith(".meta.json"):
                continue
            meta_path = path.with_name(path.stem + ".meta.json")
            try:
                payload = json.loads(path.read_text(encoding="utf-8"))
                g = graph_from_payload(payload)
                meta = (
                    json.loads(meta_path.read_text(encoding="utf-8"))
                    if meta_path.exists()
                    else {}
                )
            except (OSError, ValueError, DiffseerError):
                continue  # skip foreign or damaged files, serve the rest
            ds_id = dataset_id(g)
            handle = DatasetHandle(
                id=ds_id,
                name=str(meta.get("name", path.stem)),
                node_count=g.node_count,
                timeslice_count=g.timeslice_count,
                created_at=str(meta.get("createdAt", "1970-01-01T00:00:00Z")),
            )
            self._entries[ds_id] = _Entry(handle=handle, graph=g)

    def add(self, g: DynamicWeightedGraph, name: str) -> DatasetHandle:
        ds_id = dataset_id(g)
        with self._lock:
            if ds_id in self._entries:
                return self._entries[ds_id].handle
            created = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
            handle = DatasetHandle(
                id=ds_id,
                name=name,
                node_count=g.node_count,
                timeslice_count=g.timeslice_count,
                created_at=created,
            )
            data_path = self.data_dir / f"{ds_id}.json"
            meta_path = self.data_dir / f"{ds_id}.meta.json"
            self._write_atomic(data_path, canonical_json_bytes(graph_to_payload(g)) + b"\n")
            self._write_atomic(
                meta_path,
                canonical_json_bytes({"createdAt": created, "name": name}) + b"\n",
            )
            self._entries[ds_id] = _Entry(handle=handle, graph=g)
            return handle

    def _write_atomic(self, path: Path, data: bytes):
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_bytes(data)
        tmp.replace(path)

    def get(self, ds_id: str) -> _Entry | None:
        with self._lock:
            return self._entries.get(ds_id)

    def handles(self) -> list[DatasetHandle]:
        with self._lock:
            entries = list(self._entries.values())
        return sorted((e.handle for e in entries), key=lambda h: (h.created_at, h.id))


def _json_response(payload, status: int = 200) -> Response:
    return Response(
        content=canonical_json_bytes(payload),
        status_code=status,
        media_type="application/json",
    )


def _error(status: int, code: str, message: str, details=None) -> Response:
    return _json_response(
        {"code": code, "message": message, "details": details}, status
    )


def _parse_upload(body: bytes, kind: str, window: int, step: int) -> DynamicWeightedGraph:
    if kind == "json":
        payload = json.loads(body.decode("utf-8"))
        return graph_from_payload(payload)
    text = body.decode("utf-8")
    if kind == "edge-list":
        return ingest.parse_edge_list(_stdio.StringIO(text))
    if kind == "series":
        table = ingest.parse_series_csv(_stdio.StringIO(text))
        return ingest.build_correlation_network(table, window=window, step=step)
    raise DomainError(f"unknown dataset kind {kind!r}")


def create_app(
    data_dir: str | Path | None = None,
    max_upload_bytes: int | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    if data_dir is None:
        data_dir = os.environ.get("DIFFSEER_DATA_DIR", "diffseer-data")
    if max_upload_bytes is None:
        max_upload_bytes = int(
            os.environ.get("DIFFSEER_MAX_UPLOAD_BYTES", DEFAULT_MAX_UPLOAD)
        )
    if ui_dir is None:
        ui_dir = os.environ.get("DIFFSEER_UI_DIR")

    app = FastAPI(title="diffseer", docs_url=None, redoc_url=None)
    store = DatasetStore(Path(data_dir))
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def _bad_params(request: Request, exc: RequestValidationError):
        return _error(422, "invalid_params", "invalid query or path parameters", exc.errors())

    @app.exception_handler(DiffseerError)
    async def _engine_error(request: Request, exc: DiffseerError):
        return _error(422, "engine_error", str(exc), None)

    class _UnknownDataset(Exception):
        pass

    def _entry_or_404(ds_id: str):
        entry = store.get(ds_id)
        if entry is None:
            raise _UnknownDataset(ds_id)
        return entry

    @app.exception_handler(_UnknownDataset)
    async def _not_found(request: Request, exc: _UnknownDataset):
        return _error(404, "not_found", f"unknown dataset {exc.args[0]!r}", None)

    @app.get("/api/datasets")
    def list_datasets() -> Response:
        return _json_response([h.to_payload() for h in store.handles()])

    @app.post("/api/datasets")
    async def upload_dataset(
        request: Request,
        kind: str = "json",
        name: str | None = None,
        window: int = ingest.DEFAULT_WINDOW,
        step: int = ingest.DEFAULT_STEP,
    ) -> Response:
        body = await request.body()
        if len(body) > max_upload_bytes:
            return _error(
                413,
                "too_large",
                f"upload exceeds {max_upload_bytes} bytes",
                {"size": len(body), "limit": max_upload_bytes},
            )
        try:
            g = _parse_upload(body, kind, window, step)
        except InvalidGraphError as exc:
            return _error(
                400,
                "invalid_graph",
                "dataset failed validation",
                [v.to_payload() for v in exc.violations],
            )
        except ParseError as exc:
            return _error(400, "parse_error", str(exc), {"line": exc.line})
        except (ValueError, DiffseerError) as exc:
            return _error(400, "bad_request", str(exc), None)
        handle = store.add(g, name or f"dataset-{dataset_id(g)}")
        return _json_response(handle.to_payload(), status=201)

    @app.get("/api/datasets/{ds_id}/overview")
    def get_overview(
        ds_id: str,
        from_: int | None = Query(None, alias="from"),
        to: int | None = None,
        alpha: float = 0.5,
        detailSource: str = "original",
    ) -> Response:
        entry = _entry_or_404(ds_id)
        if detailSource not in ("original", "difference"):
            return _error(422, "invalid_params", f"unknown detailSource {detailSource!r}", None)
        key = ("overview", from_, to, repr(float(alpha)), detailSource)
        with entry.lock:
            cached = entry.cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")

        diffs = entry.diff_sequence()
        t_range = None if from_ is None and to is None else (
            from_ if from_ is not None else 1,
            to if to is not None else len(diffs),
        )
        ordering = order_nodes(entry.graph, diffs, t_range, alpha, detailSource)
        ov = build_overview(diffs, ordering.permutation, t_range)
        charts = build_charts(diffs, ordering.permutation, t_range)
        body = canonical_json_bytes(
            {
                "version": PAYLOAD_VERSION,
                "overview": overview_payload(ov),
                "ordering": ordering_payload(ordering),
                "charts": charts_payload(charts),
            }
        )
        with entry.lock:
            entry.cache[key] = body
        return Response(content=body, media_type="application/json")

    @app.get("/api/datasets/{ds_id}/detail/{t}")
    def get_detail(ds_id: str, t: int, kind: str = "difference") -> Response:
        entry = _entry_or_404(ds_id)
        if kind not in ("difference", "original"):
            return _error(422, "invalid_params", f"unknown detail kind {kind!r}", None)
        key = ("detail", t, kind)
        with entry.lock:
            cached = entry.cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")
        diffs = entry.diff_sequence() if kind == "difference" else []
        dm = build_detail(entry.graph, diffs, kind, t)
        body = canonical_json_bytes(detail_payload(dm))
        with entry.lock:
            entry.cache[key] = body
        return Response(content=body, media_type="application/json")

    @app.get("/api/datasets/{ds_id}/mask")
    def get_mask(
        ds_id: str,
        from_: int | None = Query(None, alias="from"),
        to: int | None = None,
        criterion: str = "avgChange",
        threshold: float = 1.0,
        gap: int = 3,
    ) -> Response:
        entry = _entry_or_404(ds_id)
        cfg = MaskConfig(criterion=criterion, threshold=threshold, gap_limit=gap)
        key = ("mask", from_, to, criterion, repr(float(threshold)), gap)
        with entry.lock:
            cached = entry.cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")
        diffs = entry.diff_sequence()
        t_range = None if from_ is None and to is None else (
            from_ if from_ is not None else 1,
            to if to is not None else len(diffs),
        )
        ov = build_overview(diffs, entry.graph.nodes, t_range)
        highlights = select_highlights(ov, cfg)
        paths = build_paths(highlights, list(ov.transitions), cfg, entry.graph.nodes)
        body = canonical_json_bytes(mask_payload(highlights, paths, cfg))
        with entry.lock:
            entry.cache[key] = body
        return Response(content=body, media_type="application/json")

    @app.get("/api/datasets/{ds_id}/timeline")
    def get_timeline(ds_id: str) -> Response:
        entry = _entry_or_404(ds_id)
        key = ("timeline",)
        with entry.lock:
            cached = entry.cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")
        proj = project_timeline(entry.graph)
        body = canonical_json_bytes(timeline_payload(proj, entry.graph.labels))
        with entry.lock:
            entry.cache[key] = body
        return Response(content=body, media_type="application/json")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        # Mounted last so /api/* always wins; serves a built web client
        # (index.html plus its modules) from the same origin.
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def run(data_dir: str | Path | None = None, port: int | None = None, host: str = "127.0.0.1"):
    """Run the service under uvicorn; blocks until shutdown."""
    import uvicorn

    if port is None:
        port = int(os.environ.get("DIFFSEER_PORT", DEFAULT_PORT))
    app = create_app(data_dir=data_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
