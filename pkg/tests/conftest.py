import pytest

from rwcut.graph import WeightedGraph


def make_graph(n, edges):
    return WeightedGraph.from_edges(n, [(u, v, float(w)) for u, v, w in edges])


def random_graph(n, p, rng, weighted=False, ensure_edge=True):
    """Erdos-Renyi style test graph with optional integer weights."""
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                w = float(rng.integers(1, 5)) if weighted else 1.0
                edges.append((i, j, w))
    if ensure_edge and not edges:
        edges = [(0, 1, 1.0)]
    return WeightedGraph.from_edges(n, edges)


def dumbbell(k, bridges=1):
    """Two k-cliques joined by `bridges` edges."""
    edges = []
    for base in (0, k):
        for i in range(k):
            for j in range(i + 1, k):
                edges.append((base + i, base + j, 1.0))
    for t in range(bridges):
        edges.append((t, k + t, 1.0))
    return WeightedGraph.from_edges(2 * k, edges)


def complete_graph(n):
    return WeightedGraph.from_edges(
        n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]
    )


def complete_bipartite(a, b):
    return WeightedGraph.from_edges(
        a + b, [(i, a + j, 1.0) for i in range(a) for j in range(b)]
    )


def cycle_graph(n):
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def single_edge():
    return make_graph(2, [(0, 1, 1)])
