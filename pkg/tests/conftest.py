"""Shared fixtures: the 3-node reference graph and random graph generators."""

import numpy as np
import pytest

from diffseer import dynamic_graph


@pytest.fixture
def fixture_graph():
    """A-B grows then stabilizes, A-C appears then vanishes, B-C fades."""
    return dynamic_graph(
        ["t0", "t1", "t2"],
        [
            [("A", "B", 2.0), ("B", "C", 1.0)],
            [("A", "B", 5.0), ("B", "C", 1.0), ("A", "C", 4.0)],
            [("A", "B", 5.0)],
        ],
    )


def make_random_graph(rng, n_max=20, t_max=50, n_min=2, t_min=2, weights="float"):
    """A valid random dynamic graph; universe is the union of used endpoints.

    ``weights="int"`` keeps weights on a small integer lattice so additive
    round trips are exact; ``"float"`` draws from a plain uniform range.
    """
    n = int(rng.integers(n_min, n_max + 1))
    t = int(rng.integers(t_min, t_max + 1))
    names = [f"n{i:02d}" for i in range(n)]
    labels = [f"s{k}" for k in range(t)]

    edges_per_slice = []
    for _ in range(t):
        m = int(rng.integers(1, max(2, n * (n - 1) // 2)))
        edges = {}
        for _ in range(m):
            i, j = rng.choice(n, size=2, replace=False)
            u, v = names[int(i)], names[int(j)]
            if weights == "int":
                w = float(rng.integers(-9, 10)) or 1.0
            else:
                w = float(rng.uniform(-10, 10)) or 1.0
            edges[(u, v) if u < v else (v, u)] = w
        edges_per_slice.append([(u, v, w) for (u, v), w in edges.items()])
    return dynamic_graph(labels, edges_per_slice)


def make_symmetric(rng, n, scale=5.0):
    """Random symmetric matrix with zero diagonal."""
    m = rng.uniform(-scale, scale, size=(n, n))
    m = (m + m.T) / 2.0
    np.fill_diagonal(m, 0.0)
    return m


def make_distances(rng, n):
    """Random distance matrix: symmetric, zero diagonal, entries in (0, 1]."""
    d = rng.uniform(0.05, 1.0, size=(n, n))
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    return d


def consistent_orders(z, n):
    """Every leaf order reachable by flipping internal nodes of a dendrogram.

    Exhaustive oracle for leaf ordering: 2^(n-1) candidates at most.
    """
    orders = {i: [[i]] for i in range(n)}
    for k in range(n - 1):
        a, b = int(z[k, 0]), int(z[k, 1])
        merged = []
        for left in orders[a]:
            for right in orders[b]:
                merged.append(left + right)
                merged.append(right + left)
        orders[n + k] = merged
    return orders[2 * n - 2]


def adjacent_sum(d, order):
    return float(sum(d[order[i], order[i + 1]] for i in range(len(order) - 1)))
