import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critnet import (
    EigenConvergenceError,
    SpectralError,
    adjacency_matrix,
    build_graph,
    combinatorial_laplacian,
    gen_ba,
    normalized_laplacian,
    normalized_laplacian_sparse,
    spectral_gap,
)

import oracles
from conftest import clique_edges, random_connected_edges


def test_adjacency_triangle():
    g = build_graph([(0, 1), (1, 2), (0, 2)])
    a = adjacency_matrix(g)
    assert np.array_equal(a, np.ones((3, 3)) - np.eye(3))


def test_adjacency_row_sums_are_degrees(path3):
    assert list(adjacency_matrix(path3).sum(axis=1)) == [1, 2, 1]


def test_combinatorial_laplacian_rows_sum_to_zero():
    g = build_graph(random_connected_edges(2, 25))
    lap = combinatorial_laplacian(g)
    assert np.allclose(lap.sum(axis=1), 0.0)
    assert np.allclose(lap, lap.T)


def test_combinatorial_laplacian_triangle():
    g = build_graph([(0, 1), (1, 2), (0, 2)])
    assert np.array_equal(combinatorial_laplacian(g), 2 * np.eye(3) - (np.ones((3, 3)) - np.eye(3)))


def test_normalized_laplacian_single_edge():
    g = build_graph([(0, 1)])
    assert np.array_equal(normalized_laplacian(g), np.array([[1.0, -1.0], [-1.0, 1.0]]))


def test_normalized_laplacian_path_entry(path3):
    lap = normalized_laplacian(path3)
    assert lap[0, 1] == pytest.approx(-1.0 / math.sqrt(2))
    assert np.allclose(np.diag(lap), 1.0)


def test_normalized_laplacian_k4_offdiagonal(k4):
    lap = normalized_laplacian(k4)
    off = lap[~np.eye(4, dtype=bool)]
    assert np.allclose(off, -1.0 / 3.0)


def test_normalized_laplacian_rejects_isolated(two_triangles, barbell):
    from critnet.graph import _extract

    # keep node 3 plus the first triangle: 3 ends up isolated
    sub = _extract(two_triangles, np.array([0, 1, 2, 3]))
    with pytest.raises(SpectralError, match="isolated"):
        normalized_laplacian(sub)
    with pytest.raises(SpectralError, match="isolated"):
        normalized_laplacian_sparse(sub)


def test_sparse_matches_dense():
    g = build_graph(random_connected_edges(7, 40))
    assert np.allclose(normalized_laplacian_sparse(g).toarray(), normalized_laplacian(g))


def test_spectral_gap_p3(path3):
    res = spectral_gap(path3)
    assert res.lambda2 == pytest.approx(1.0, abs=1e-8)
    assert res.eigenvalues[1] == res.lambda2
    assert np.allclose(res.eigenvalues, [0.0, 1.0, 2.0], atol=1e-8)


def test_spectral_gap_star(star4):
    res = spectral_gap(star4)
    assert res.lambda2 == pytest.approx(1.0, abs=1e-8)
    assert np.allclose(res.eigenvalues, [0.0, 1.0, 1.0, 1.0, 2.0], atol=1e-8)


@pytest.mark.parametrize("n", range(3, 9))
def test_spectral_gap_complete_graphs(n):
    g = build_graph(clique_edges(range(n)))
    assert spectral_gap(g).lambda2 == pytest.approx(n / (n - 1), abs=1e-8)


def test_spectral_gap_disconnected_is_zero(two_triangles):
    assert spectral_gap(two_triangles).lambda2 == pytest.approx(0.0, abs=1e-8)


def test_spectral_gap_two_disjoint_edges():
    g = build_graph([(0, 1), (2, 3)])
    assert spectral_gap(g).lambda2 == pytest.approx(0.0, abs=1e-8)


def test_spectral_gap_needs_two_nodes():
    g = build_graph([(0, 1)])
    from critnet.graph import _extract

    single = _extract(g, np.array([0]))
    with pytest.raises(SpectralError, match="at least 2"):
        spectral_gap(single)


def test_trace_identity():
    g = build_graph(random_connected_edges(13, 30))
    res = spectral_gap(g)
    assert sum(res.eigenvalues) == pytest.approx(g.n_nodes, rel=1e-6)


@given(st.integers(0, 2**32 - 1), st.integers(4, 64))
@settings(max_examples=60, deadline=None)
def test_eigenvalue_bounds_random(seed, n):
    g = build_graph(random_connected_edges(seed, n))
    res = spectral_gap(g)
    assert res.eigenvalues[0] <= 1e-8
    assert all(-1e-8 <= x <= 2 + 1e-8 for x in res.eigenvalues)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_oracle_equivalence_random(seed):
    edges = random_connected_edges(seed, 12, extra=0.8)
    g = build_graph(edges)
    assert spectral_gap(g).lambda2 == pytest.approx(oracles.oracle_lambda2(edges), abs=1e-8)


def test_iterative_path_matches_dense():
    for seed in range(6):
        edges = random_connected_edges(seed, 260)
        g = build_graph(edges)
        dense = spectral_gap(g, dense_threshold=4096)
        iterative = spectral_gap(g, dense_threshold=16)
        assert iterative.lambda2 == pytest.approx(dense.lambda2, abs=1e-7)
        assert iterative.eigenvalues[0] == 0.0
        assert iterative.eigenvalues[1] == iterative.lambda2
        # lambda3 from the deflated solve matches the dense spectrum too
        assert iterative.eigenvalues[2] == pytest.approx(dense.eigenvalues[2], abs=1e-7)


def test_iterative_path_on_complete_graph():
    g = build_graph(clique_edges(range(120)))
    res = spectral_gap(g, dense_threshold=8)
    assert res.lambda2 == pytest.approx(120 / 119, abs=1e-8)


def test_iterative_nonconvergence_raises():
    g = gen_ba(3000, 2, 9)
    with pytest.raises(EigenConvergenceError):
        spectral_gap(g, dense_threshold=8, maxiter=1)


def test_lambda2_below_one_for_noncomplete():
    for seed in range(8):
        edges = random_connected_edges(seed, 20, extra=0.5)
        g = build_graph(edges)
        complete = g.edge_count == g.n_nodes * (g.n_nodes - 1) // 2
        if not complete:
            assert spectral_gap(g).lambda2 < 1.0
