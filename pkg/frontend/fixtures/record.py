"""Record live API payloads into JSON fixtures for the UI contract tests.

Run from the repository root after installing the Python package:

    python3 frontend/fixtures/record.py
"""

import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from diffseer import dynamic_graph
from diffseer.io import canonical_json_bytes, graph_to_payload
from diffseer.service import create_app

OUT = Path(__file__).resolve().parent

# Same little collaboration story the demos use: enough signal for
# highlights, within-column and cross-column paths at default settings.
WEEKS = [f"week{i + 1}" for i in range(6)]
SLICES = [
    [("amy", "bob", 5.0), ("bob", "carol", 2.0), ("carol", "eve", 1.0)],
    [("amy", "bob", 5.0), ("bob", "carol", 3.0), ("carol", "eve", 1.0)],
    [("amy", "bob", 2.0), ("amy", "dana", 4.0), ("bob", "carol", 3.0), ("carol", "eve", 1.0)],
    [("amy", "bob", 1.0), ("amy", "dana", 6.0), ("bob", "carol", 3.0), ("carol", "eve", 2.0)],
    [("amy", "dana", 6.0), ("bob", "carol", 3.0), ("carol", "eve", 2.0)],
    [("amy", "dana", 6.0), ("bob", "carol", 3.0), ("carol", "eve", 2.0)],
]


def record(client, name, url, params=None, expect=200):
    r = client.get(url, params=params)
    assert r.status_code == expect, f"{url}: {r.status_code} {r.text}"
    (OUT / f"{name}.json").write_bytes(r.content + b"\n")
    print(f"wrote {name}.json ({len(r.content)} bytes)")


def main():
    g = dynamic_graph(WEEKS, SLICES)
    with tempfile.TemporaryDirectory() as tmp:
        with TestClient(create_app(data_dir=tmp)) as client:
            body = canonical_json_bytes(graph_to_payload(g))
            r = client.post(
                "/api/datasets", params={"kind": "json", "name": "collaboration"},
                content=body,
            )
            assert r.status_code == 201, r.text
            (OUT / "handle.json").write_bytes(r.content + b"\n")
            ds = r.json()["id"]
            print(f"dataset {ds}")

            record(client, "datasets", "/api/datasets")
            record(client, "overview_full", f"/api/datasets/{ds}/overview")
            record(client, "overview_sub", f"/api/datasets/{ds}/overview",
                   {"from": 2, "to": 4})
            record(client, "overview_alpha0", f"/api/datasets/{ds}/overview",
                   {"alpha": 0})
            record(client, "overview_alpha1", f"/api/datasets/{ds}/overview",
                   {"alpha": 1})
            record(client, "detail_2_difference", f"/api/datasets/{ds}/detail/2",
                   {"kind": "difference"})
            record(client, "detail_2_original", f"/api/datasets/{ds}/detail/2",
                   {"kind": "original"})
            record(client, "mask_default", f"/api/datasets/{ds}/mask")
            record(client, "mask_strict", f"/api/datasets/{ds}/mask",
                   {"threshold": 99.0})
            record(client, "timeline", f"/api/datasets/{ds}/timeline")
            record(client, "error_not_found", "/api/datasets/ffffffffffff/timeline",
                   expect=404)
    return 0


if __name__ == "__main__":
    sys.exit(main())
