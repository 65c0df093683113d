"""Release gate: the eight binding checks, one printed verdict line each.

Every test ends by emitting ``[PASS]``/``[FAIL] <criterion>: <figures>``
with capture suspended, so the verdicts land in the live pytest output.
"""

import time

import numpy as np
import pytest

from diffseer import (
    apply_diff,
    build_charts,
    build_overview,
    compute_diff_sequence,
    detail_distance,
    dynamic_graph,
    leaf_order,
    order_nodes,
    overview_distance,
    project_timeline,
    row_similarity,
)
from diffseer.ingest import parse_edge_list
from diffseer.mask import MaskConfig, build_paths, select_highlights
from diffseer.model import weight_stack
from diffseer.reorder import DistanceMatrix

from conftest import adjacent_sum, consistent_orders, make_distances, make_random_graph


@pytest.fixture
def report(capsys):
    def _report(name: str, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
        with capsys.disabled():
            # leading newline: under -v the node id has already been
            # written without one, and the verdict should own its line
            print("\n" + line, flush=True)
        assert ok, line

    return _report


def _max_weight_gap(a: dict, b: dict) -> float:
    keys = a.keys() | b.keys()
    return max((abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys), default=0.0)


def test_diff_round_trip(report):
    """500 random graphs, n <= 20, T <= 50: folding the diffs restores every
    snapshot within 1e-9, in under 10 s."""
    rng = np.random.default_rng(101)
    started = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        g = make_random_graph(rng, n_max=20, t_max=50)
        current = g.snapshots[0]
        for d in compute_diff_sequence(g):
            current = apply_diff(current, d)
            worst = max(
                worst, _max_weight_gap(current.weights(), g.snapshots[d.transition_index].weights())
            )
    elapsed = time.perf_counter() - started
    report(
        "diff round-trip",
        worst <= 1e-9 and elapsed < 10.0,
        f"500 graphs, max snapshot error {worst:.2e}, {elapsed:.1f}s (budget 10s)",
    )


def test_similarity_bound(report):
    """1000 random symmetric matrices, n in [3, 12]: |I_s| <= 1/(n-1) + 1e-12
    for every row pair, and a duplicated row attains the bound."""
    rng = np.random.default_rng(202)
    worst_excess = -np.inf
    worst_dup_gap = 0.0
    for _ in range(1000):
        n = int(rng.integers(3, 13))
        m = rng.uniform(-5, 5, size=(n, n))
        m = (m + m.T) / 2.0
        np.fill_diagonal(m, 0.0)
        cap = 1.0 / (n - 1)
        for a in range(n):
            for b in range(a + 1, n):
                worst_excess = max(worst_excess, abs(row_similarity(m, a, b)) - cap)
        dup = m.copy()
        dup[1] = dup[0]
        worst_dup_gap = max(worst_dup_gap, abs(row_similarity(dup, 0, 1) - cap))
    report(
        "row-similarity bound",
        worst_excess <= 1e-12 and worst_dup_gap <= 1e-12,
        f"1000 matrices, max excess over 1/(n-1): {worst_excess:.2e}, "
        f"duplicated-row gap {worst_dup_gap:.2e}",
    )


def test_leaf_order_optimality(report):
    """100 random distance matrices, n <= 8: the solver's adjacent-distance
    sum equals the exhaustive minimum over dendrogram-consistent orders,
    in under 60 s."""
    from scipy.cluster.hierarchy import linkage
    from scipy.spatial.distance import squareform

    rng = np.random.default_rng(303)
    started = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 9))
        values = make_distances(rng, n)
        ids = tuple(f"n{i}" for i in range(n))
        got = leaf_order(DistanceMatrix(ids, values))
        if n == 1:
            continue
        z = linkage(squareform(values, checks=False), method="average")
        best = min(adjacent_sum(values, order) for order in consistent_orders(z, n))
        worst = max(worst, abs(got.objective - best))
    elapsed = time.perf_counter() - started
    report(
        "leaf-order optimality",
        worst <= 1e-9 and elapsed < 60.0,
        f"100 matrices, max objective gap {worst:.2e}, {elapsed:.1f}s (budget 60s)",
    )


def test_alpha_endpoint_equivalence(report):
    """50 random datasets: alpha=1 reproduces the overview-only order and
    alpha=0 the detail-only order, permutation for permutation."""
    rng = np.random.default_rng(404)
    mismatches = 0
    for _ in range(50):
        g = make_random_graph(rng, n_max=10, t_max=12, n_min=3, t_min=3)
        diffs = compute_diff_sequence(g)
        full = (1, len(diffs))
        d_ov = overview_distance(build_overview(diffs, g.nodes, full))
        d_det = detail_distance(list(weight_stack(g)), g.nodes)
        if order_nodes(g, diffs, alpha=1.0).permutation != leaf_order(d_ov).permutation:
            mismatches += 1
        if order_nodes(g, diffs, alpha=0.0).permutation != leaf_order(d_det).permutation:
            mismatches += 1
    report(
        "alpha endpoint equivalence",
        mismatches == 0,
        f"50 datasets x 2 endpoints, {mismatches} permutation mismatches",
    )


def _brute_force_highlights(ov, cfg):
    want = set()
    for cell in ov.cells():
        if cfg.criterion == "avgChange":
            if abs(cell.avg_change) >= cfg.threshold:
                sign = "positive" if cell.avg_change > 0 else "negative"
                want.add((cell.node, cell.transition_index, sign))
        else:
            count = cell.pos_count + cell.neg_count
            if count >= cfg.threshold:
                sign = "positive" if cell.pos_count >= cell.neg_count else "negative"
                want.add((cell.node, cell.transition_index, sign))
    return want


def test_mask_brute_force_audit(report):
    """200 random overview matrices: highlights match the rules exactly, no
    cross-column path spans a positional gap above the limit, and raising
    the threshold never adds highlights."""
    rng = np.random.default_rng(505)
    bad = []
    for i in range(200):
        g = make_random_graph(rng, n_max=8, t_max=10, n_min=3, t_min=3)
        diffs = compute_diff_sequence(g)
        ov = build_overview(diffs, g.nodes)
        criterion = "avgChange" if rng.integers(2) else "changedEdgeCount"
        threshold = float(rng.uniform(0.5, 4.0))
        cfg = MaskConfig(criterion=criterion, threshold=threshold, gap_limit=int(rng.integers(0, 4)))

        highlights = select_highlights(ov, cfg)
        got = {(h.node, h.transition_index, h.sign) for h in highlights}
        if got != _brute_force_highlights(ov, cfg):
            bad.append((i, "highlight rule"))
            continue

        # links join successive highlighted columns; any node lit in both
        columns = list(ov.transitions)
        pos = {t: k for k, t in enumerate(columns)}
        by_col = {}
        for h in highlights:
            by_col.setdefault(h.transition_index, {})[h.node] = h.sign
        lit = [t for t in columns if t in by_col]
        expected_cross = set()
        for a, b in zip(lit, lit[1:]):
            if pos[b] - pos[a] - 1 <= cfg.gap_limit:
                for node in set(by_col[a]) & set(by_col[b]):
                    expected_cross.add((node, a, by_col[a][node], b, by_col[b][node]))
        paths = build_paths(highlights, columns, cfg, g.nodes)
        cross = {
            (p.node, p.from_column, p.from_sign, p.to_column, p.to_sign)
            for p in paths
            if hasattr(p, "from_column")
        }
        if cross != expected_cross or any(
            pos[c[3]] - pos[c[1]] - 1 > cfg.gap_limit for c in cross
        ):
            bad.append((i, "cross-column paths"))
            continue

        tighter = MaskConfig(criterion=criterion, threshold=threshold * 1.5, gap_limit=cfg.gap_limit)
        subset = {(h.node, h.transition_index, h.sign) for h in select_highlights(ov, tighter)}
        if not subset <= got:
            bad.append((i, "threshold monotonicity"))
    report(
        "mask brute-force audit",
        not bad,
        f"200 matrices, {len(bad)} violations" + (f" (first: {bad[0]})" if bad else ""),
    )


def test_column_consistency(report):
    """Per transition, node-cell positive counts sum to exactly twice the
    stacked-bar positive edge count (each edge touches two nodes)."""
    rng = np.random.default_rng(606)
    fixtures = [
        dynamic_graph(
            ["t0", "t1", "t2"],
            [
                [("A", "B", 2.0), ("B", "C", 1.0)],
                [("A", "B", 5.0), ("B", "C", 1.0), ("A", "C", 4.0)],
                [("A", "B", 5.0)],
            ],
        )
    ]
    fixtures += [make_random_graph(rng, n_max=12, t_max=15) for _ in range(50)]
    checked = 0
    bad = 0
    for g in fixtures:
        diffs = compute_diff_sequence(g)
        ov = build_overview(diffs, g.nodes)
        charts = build_charts(diffs, g.nodes)
        for col, t in enumerate(ov.transitions):
            checked += 1
            if int(ov.pos_counts[:, col].sum()) != 2 * int(charts.pos_edges[col]):
                bad += 1
            if int(ov.neg_counts[:, col].sum()) != 2 * int(charts.neg_edges[col]):
                bad += 1
    report(
        "column consistency",
        bad == 0,
        f"{len(fixtures)} fixtures, {checked} transition columns, {bad} mismatches",
    )


def _edge_list_csv(rng, nodes, timeslices, density):
    lines = ["time,source,target,weight"]
    pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :]]
    for t in range(timeslices):
        for u, v in pairs:
            if rng.random() < density:
                w = float(np.round(rng.uniform(-3, 3), 2)) or 1.0
                lines.append(f"s{t:04d},{u},{v},{w}")
    return "\n".join(lines) + "\n"


def _dense_graph(rng, n, timeslices):
    nodes = [f"e{i:02d}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :]]
    weights = rng.uniform(0.05, 1.0, size=(timeslices, len(pairs)))
    weights *= rng.choice([-1.0, 1.0], size=weights.shape)
    slices = [
        [(u, v, float(w)) for (u, v), w in zip(pairs, row)] for row in weights
    ]
    return dynamic_graph([f"w{k:04d}" for k in range(timeslices)], slices)


def test_paper_scale_performance(report):
    """Sparse 12x329 dataset runs the whole pipeline in under 1 s; a dense
    28x2761 dataset finishes aggregation plus ordering in under 10 s."""
    import io

    rng = np.random.default_rng(707)
    small_csv = _edge_list_csv(rng, [f"t{i:02d}" for i in range(12)], 329, 0.4)

    started = time.perf_counter()
    g = parse_edge_list(io.StringIO(small_csv))
    diffs = compute_diff_sequence(g)
    ordering = order_nodes(g, diffs)
    ov = build_overview(diffs, ordering.permutation)
    build_charts(diffs, ordering.permutation)
    cfg = MaskConfig()
    highlights = select_highlights(ov, cfg)
    build_paths(highlights, list(ov.transitions), cfg, ordering.permutation)
    project_timeline(g)
    small_elapsed = time.perf_counter() - started
    assert g.node_count == 12 and g.timeslice_count == 329

    big = _dense_graph(rng, 28, 2761)
    started = time.perf_counter()
    big_diffs = compute_diff_sequence(big)
    build_overview(big_diffs, big.nodes)
    order_nodes(big, big_diffs)
    big_elapsed = time.perf_counter() - started

    report(
        "paper-scale performance",
        small_elapsed < 1.0 and big_elapsed < 10.0,
        f"12x329 full pipeline {small_elapsed:.2f}s (budget 1s); "
        f"28x2761 overview+ordering {big_elapsed:.2f}s (budget 10s)",
    )


def test_analyze_determinism(report, tmp_path):
    """Two analyze runs over the same dataset write byte-identical artifacts."""
    from diffseer.cli import main
    from diffseer.io import save_dataset

    rng = np.random.default_rng(808)
    data = tmp_path / "data.json"
    save_dataset(data, make_random_graph(rng, n_max=10, t_max=20, n_min=4, t_min=4))
    assert main(["analyze", str(data), "-o", str(tmp_path / "a")]) == 0
    assert main(["analyze", str(data), "-o", str(tmp_path / "b")]) == 0
    names = ("overview.json", "ordering.json", "mask.json", "timeline.json")
    diffs = [
        name
        for name in names
        if (tmp_path / "a" / name).read_bytes() != (tmp_path / "b" / name).read_bytes()
    ]
    report(
        "analyze determinism",
        not diffs,
        f"4 artifacts compared, {len(diffs)} unstable" + (f": {diffs}" if diffs else ""),
    )
