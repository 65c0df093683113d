"""Core model: snapshots, validation, diff sequence and its inverse."""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from diffseer import (
    DynamicWeightedGraph,
    GraphDiff,
    GraphSnapshot,
    IndexMismatchError,
    InvalidGraphError,
    UnknownNodeError,
    apply_diff,
    canonical_pair,
    compute_diff_sequence,
    dynamic_graph,
    node_presence,
    snapshot,
    validate_graph,
)
from diffseer.model import diff_stack, weight_stack

from conftest import make_random_graph


def test_canonical_pair_orders_by_string():
    assert canonical_pair("B", "A") == ("A", "B")
    assert canonical_pair("A", "B") == ("A", "B")
    # string order, not numeric: "10" < "9"
    assert canonical_pair("9", "10") == ("10", "9")


def test_snapshot_drops_zero_weights_and_sorts():
    s = snapshot(0, "t0", [("C", "B", 1.0), ("B", "A", 2.0), ("A", "C", 0.0)])
    assert s.edges == (("A", "B", 2.0), ("B", "C", 1.0))
    assert s.weight("C", "B") == 1.0
    assert s.weight("A", "C") == 0.0


def test_fixture_diffs(fixture_graph):
    diffs = compute_diff_sequence(fixture_graph)
    assert len(diffs) == 2
    assert diffs[0].transition_index == 1
    assert diffs[0].deltas() == {("A", "B"): 3.0, ("A", "C"): 4.0}
    assert diffs[1].deltas() == {("A", "C"): -4.0, ("B", "C"): -1.0}


def test_identical_snapshots_give_empty_diffs():
    edges = [("A", "B", 1.5), ("B", "C", 2.0)]
    g = dynamic_graph(["a", "b", "c"], [edges, edges, edges])
    for d in compute_diff_sequence(g):
        assert d.edges == ()


def test_epsilon_suppresses_tiny_changes():
    g = dynamic_graph(
        ["t0", "t1"],
        [[("A", "B", 1.0)], [("A", "B", 1.0 + 1e-12), ("A", "C", 5.0)]],
    )
    exact = compute_diff_sequence(g)
    assert ("A", "B") in exact[0].deltas()
    tolerant = compute_diff_sequence(g, epsilon=1e-9)
    assert tolerant[0].deltas() == {("A", "C"): 5.0}


def test_diff_requires_two_timeslices():
    g = dynamic_graph(["only"], [[("A", "B", 1.0)]])
    with pytest.raises(InvalidGraphError):
        compute_diff_sequence(g)


def test_apply_diff_round_trip(fixture_graph):
    diffs = compute_diff_sequence(fixture_graph)
    state = fixture_graph.snapshots[0]
    for i, d in enumerate(diffs, start=1):
        state = apply_diff(state, d, label=fixture_graph.labels[i])
        assert state.weights() == fixture_graph.snapshots[i].weights()


def test_apply_diff_drops_vanished_edges(fixture_graph):
    diffs = compute_diff_sequence(fixture_graph)
    final = apply_diff(fixture_graph.snapshots[1], diffs[1])
    # A-C went 4 -> 0 and B-C went 1 -> 0: both must disappear, not linger at 0
    assert final.edges == (("A", "B", 5.0),)


def test_apply_diff_checks_transition_index(fixture_graph):
    diffs = compute_diff_sequence(fixture_graph)
    with pytest.raises(IndexMismatchError):
        apply_diff(fixture_graph.snapshots[0], diffs[1])


@seed(20260825)
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_random(state):
    rng = np.random.default_rng(state)
    g = make_random_graph(rng, n_max=10, t_max=12)
    diffs = compute_diff_sequence(g)
    current = g.snapshots[0]
    for i, d in enumerate(diffs, start=1):
        current = apply_diff(current, d)
        want = g.snapshots[i].weights()
        got = current.weights()
        # absent edges read as 0; accumulated float error may leave dust
        for key in set(got) | set(want):
            assert got.get(key, 0.0) == pytest.approx(want.get(key, 0.0), abs=1e-9)


@seed(20260826)
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_exact_on_integer_weights(state):
    rng = np.random.default_rng(state)
    g = make_random_graph(rng, n_max=10, t_max=12, weights="int")
    current = g.snapshots[0]
    for i, d in enumerate(compute_diff_sequence(g), start=1):
        current = apply_diff(current, d)
        # integer lattice: no rounding, so even edge presence matches exactly
        assert current.weights() == g.snapshots[i].weights()


def test_diff_relabeling_equivariance(fixture_graph):
    mapping = {"A": "x", "B": "q", "C": "m"}
    relabeled = dynamic_graph(
        list(fixture_graph.labels),
        [
            [(mapping[u], mapping[v], w) for u, v, w in s.edges]
            for s in fixture_graph.snapshots
        ],
    )
    base = compute_diff_sequence(fixture_graph)
    other = compute_diff_sequence(relabeled)
    for d_base, d_other in zip(base, other):
        mapped = {
            canonical_pair(mapping[u], mapping[v]): delta
            for (u, v), delta in d_base.deltas().items()
        }
        assert mapped == d_other.deltas()


def test_validate_clean_graph(fixture_graph):
    assert validate_graph(fixture_graph) == []


def _codes(g):
    return {v.code for v in validate_graph(g)}


def test_validate_self_loop():
    g = DynamicWeightedGraph(
        nodes=("A", "B"),
        snapshots=(GraphSnapshot(0, "t0", (("A", "A", 1.0), ("A", "B", 1.0))),),
    )
    assert "self_loop" in _codes(g)


def test_validate_noncanonical_and_duplicate_pair():
    g = DynamicWeightedGraph(
        nodes=("A", "B"),
        snapshots=(GraphSnapshot(0, "t0", (("B", "A", 1.0), ("A", "B", 2.0))),),
    )
    codes = _codes(g)
    assert "noncanonical_pair" in codes
    assert "duplicate_pair" in codes


def test_validate_weight_defects():
    g = DynamicWeightedGraph(
        nodes=("A", "B", "C"),
        snapshots=(
            GraphSnapshot(0, "t0", (("A", "B", float("nan")), ("A", "C", 0.0))),
        ),
    )
    codes = _codes(g)
    assert "nonfinite_weight" in codes
    assert "zero_weight" in codes


def test_validate_unknown_and_isolated_node():
    g = DynamicWeightedGraph(
        nodes=("A", "B", "Z"),
        snapshots=(GraphSnapshot(0, "t0", (("A", "B", 1.0), ("A", "Q", 1.0))),),
    )
    codes = _codes(g)
    assert "unknown_node" in codes  # Q appears on an edge but not in the universe
    assert "isolated_node" in codes  # Z is in the universe but never on an edge


def test_validate_bad_snapshot_index():
    g = DynamicWeightedGraph(
        nodes=("A", "B"),
        snapshots=(GraphSnapshot(3, "t0", (("A", "B", 1.0),)),),
    )
    assert "bad_snapshot_index" in _codes(g)


def test_validate_duplicate_and_empty_node_ids():
    g = DynamicWeightedGraph(
        nodes=("A", "A", ""),
        snapshots=(GraphSnapshot(0, "t0", (("A", "B", 1.0),)),),
    )
    codes = _codes(g)
    assert "duplicate_node" in codes
    assert "empty_node_id" in codes


def test_compute_diff_rejects_invalid_graph():
    g = DynamicWeightedGraph(
        nodes=("A", "B"),
        snapshots=(
            GraphSnapshot(0, "t0", (("A", "A", 1.0),)),
            GraphSnapshot(1, "t1", (("A", "B", 1.0),)),
        ),
    )
    with pytest.raises(InvalidGraphError) as exc_info:
        compute_diff_sequence(g)
    assert any(v.code == "self_loop" for v in exc_info.value.violations)


def test_node_presence(fixture_graph):
    assert node_presence(fixture_graph, "A") == [True, True, True]
    assert node_presence(fixture_graph, "C") == [True, True, False]
    with pytest.raises(UnknownNodeError):
        node_presence(fixture_graph, "Q")


def test_weight_stack_dense_symmetric(fixture_graph):
    stack = weight_stack(fixture_graph)
    assert stack.shape == (3, 3, 3)
    assert np.array_equal(stack[0], stack[0].T)
    # A-B at t0 is 2, diagonal zero
    assert stack[0, 0, 1] == 2.0
    assert np.all(np.diagonal(stack, axis1=1, axis2=2) == 0.0)
    deltas = diff_stack(stack)
    assert deltas.shape == (2, 3, 3)
    assert deltas[0, 0, 1] == 3.0  # A-B: 2 -> 5
