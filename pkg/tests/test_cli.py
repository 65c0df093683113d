"""Command line behavior: artifacts, exit codes, and the serve subcommand."""

import socket
import subprocess
import sys
import time
import urllib.error
import urllib.request
from signal import SIGTERM

import pytest

from diffseer.cli import main
from diffseer.io import load_dataset
from diffseer.model import compute_diff_sequence
from diffseer.reorder import order_nodes

EDGE_CSV = (
    "time,source,target,weight\n"
    "t0,A,B,2.0\nt0,B,C,1.0\n"
    "t1,A,B,5.0\nt1,B,C,1.0\nt1,A,C,4.0\n"
    "t2,A,B,5.0\n"
)


def write_dataset(tmp_path):
    src = tmp_path / "edges.csv"
    src.write_text(EDGE_CSV, encoding="utf-8")
    out = tmp_path / "data.json"
    assert main(["ingest", str(src), "-o", str(out)]) == 0
    return out


def test_ingest_edge_list(tmp_path, capsys):
    out = write_dataset(tmp_path)
    g = load_dataset(out)
    assert g.nodes == ("A", "B", "C")
    assert g.timeslice_count == 3
    assert "3 nodes, 3 timeslices" in capsys.readouterr().out

    again = tmp_path / "again.json"
    assert main(["ingest", str(tmp_path / "edges.csv"), "-o", str(again)]) == 0
    assert again.read_bytes() == out.read_bytes()


def test_ingest_reports_bad_row_with_line(tmp_path, capsys):
    src = tmp_path / "edges.csv"
    src.write_text("time,source,target,weight\nt0,A,B,much\n", encoding="utf-8")
    rc = main(["ingest", str(src), "-o", str(tmp_path / "out.json")])
    assert rc == 2
    err = capsys.readouterr().err
    assert "line 2" in err


def test_ingest_series_window_longer_than_data(tmp_path, capsys):
    src = tmp_path / "series.csv"
    src.write_text(
        "time,X,Y\n" + "".join(f"d{i},{i},{7 - i}\n" for i in range(5)),
        encoding="utf-8",
    )
    rc = main([
        "ingest", str(src), "-o", str(tmp_path / "out.json"),
        "--kind", "series", "--window", "10",
    ])
    assert rc == 2
    assert capsys.readouterr().err.startswith("diffseer:")


def test_ingest_missing_file(tmp_path, capsys):
    rc = main(["ingest", str(tmp_path / "nope.csv"), "-o", str(tmp_path / "o.json")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


ARTIFACTS = ("overview.json", "ordering.json", "mask.json", "timeline.json")


def test_analyze_writes_stable_artifacts(tmp_path):
    data = write_dataset(tmp_path)
    first = tmp_path / "run1"
    second = tmp_path / "run2"
    assert main(["analyze", str(data), "-o", str(first)]) == 0
    assert main(["analyze", str(data), "-o", str(second)]) == 0
    for name in ARTIFACTS:
        a, b = (first / name).read_bytes(), (second / name).read_bytes()
        assert a, f"{name} is empty"
        assert a == b, f"{name} differs between runs"


def test_analyze_alpha_flag_matches_library(tmp_path):
    data = write_dataset(tmp_path)
    out = tmp_path / "out"
    assert main(["analyze", str(data), "-o", str(out), "--alpha", "1.0"]) == 0
    import json

    ordering = json.loads((out / "ordering.json").read_text())
    g = load_dataset(data)
    want = order_nodes(g, compute_diff_sequence(g), None, 1.0, "original")
    assert ordering["permutation"] == list(want.permutation)
    assert ordering["alpha"] == 1.0


def test_analyze_unknown_dataset(tmp_path, capsys):
    rc = main(["analyze", str(tmp_path / "ghost.json"), "-o", str(tmp_path / "o")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


def test_analyze_rejects_inverted_range(tmp_path, capsys):
    data = write_dataset(tmp_path)
    rc = main(["analyze", str(data), "-o", str(tmp_path / "o"),
               "--from", "2", "--to", "1"])
    assert rc == 2
    assert capsys.readouterr().err.startswith("diffseer:")


@pytest.mark.parametrize(
    "argv,needles",
    [
        (["ingest", "--help"], ["default: 20", "default: edge-list", "default: sum"]),
        (["analyze", "--help"], ["default: 0.5", "default: avgChange",
                                 "default: 1.0", "default: 3", "default: original"]),
        (["serve", "--help"], ["8791", "DIFFSEER_DATA_DIR"]),
    ],
)
def test_help_documents_defaults(capsys, argv, needles):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 0
    # argparse wraps help text at terminal width, so compare un-wrapped
    text = " ".join(capsys.readouterr().out.split())
    for needle in needles:
        assert needle in text


def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def _wait_for_http(port, timeout=15.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        try:
            with urllib.request.urlopen(
                f"http://127.0.0.1:{port}/api/datasets", timeout=1
            ) as resp:
                return resp.status, resp.read()
        except (urllib.error.URLError, ConnectionError, OSError):
            time.sleep(0.1)
    raise TimeoutError(f"server on port {port} never answered")


def test_serve_answers_and_stops_on_sigterm(tmp_path):
    port = _free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "diffseer.cli", "serve",
         "--port", str(port), "--data-dir", str(tmp_path / "data")],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    try:
        status, body = _wait_for_http(port)
        assert status == 200
        assert body == b"[]"
        proc.send_signal(SIGTERM)
        rc = proc.wait(timeout=15)
        # uvicorn drains connections, then re-raises the signal; both a plain
        # zero and a signal exit count as a clean stop, a kill/timeout does not
        err = proc.stderr.read().decode()
        assert rc in (0, -SIGTERM), err
        assert "Traceback" not in err
    finally:
        if proc.poll() is None:
            proc.kill()
            proc.wait()


def test_serve_occupied_port_exits_2(tmp_path):
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    blocker.listen(1)
    port = blocker.getsockname()[1]
    try:
        proc = subprocess.run(
            [sys.executable, "-m", "diffseer.cli", "serve",
             "--port", str(port), "--data-dir", str(tmp_path / "data")],
            capture_output=True,
            timeout=30,
        )
    finally:
        blocker.close()
    assert proc.returncode == 2
    assert b"cannot bind" in proc.stderr
