import numpy as np
import pytest

from critnet import Graph, build_graph


def clique_edges(nodes) -> list[tuple[int, int]]:
    nodes = list(nodes)
    return [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :]]


def barbell_edges() -> list[tuple[int, int]]:
    """Two K5s ({0..4} and {6..10}) whose members all attach to cut node 5."""
    edges = []
    for base in (0, 6):
        block = [base + i for i in range(5)]
        edges += clique_edges(block)
        edges += [(5, x) for x in block]
    return edges


def random_connected_edges(seed: int, n: int, extra: float = 1.4) -> list[tuple[int, int]]:
    """Random connected graph: spanning tree plus extra*n random edges."""
    rng = np.random.default_rng(seed)
    edges = {(int(min(i, j)), int(max(i, j))) for i, j in ((k, rng.integers(k)) for k in range(1, n))}
    for _ in range(int(extra * n)):
        a, b = rng.integers(n), rng.integers(n)
        if a != b:
            edges.add((int(min(a, b)), int(max(a, b))))
    return sorted(edges)


@pytest.fixture
def path3() -> Graph:
    return build_graph([(0, 1), (1, 2)])


@pytest.fixture
def star4() -> Graph:
    return build_graph([(0, i) for i in range(1, 5)])


@pytest.fixture
def k4() -> Graph:
    return build_graph(clique_edges(range(4)))


@pytest.fixture
def barbell() -> Graph:
    return build_graph(barbell_edges())


@pytest.fixture
def two_triangles() -> Graph:
    return build_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
