"""Graph matrices and the spectral gap of the normalized Laplacian.

The normalized Laplacian of an undirected graph has all eigenvalues in
[0, 2] and always has eigenvalue 0; its second-smallest eigenvalue (the
spectral gap) measures connectivity strength and approaches 0 as the graph
nears disconnection. For a disconnected graph 0 has multiplicity equal to
the component count, so the gap reported here is ~0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .graph import Graph

DEFAULT_DENSE_THRESHOLD = 2048
ZERO_TOLERANCE = 1e-8
RESIDUAL_TOLERANCE = 1e-9
# ~100x tighter than RESIDUAL_TOLERANCE; the post-solve check still verifies.
ARPACK_TOLERANCE = 1e-11


class SpectralError(RuntimeError):
    """Spectral computation failed or was called on unusable input."""


class EigenConvergenceError(SpectralError):
    """Iterative eigensolver hit its iteration cap before converging."""


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues of a normalized Laplacian, ascending, plus the gap.

    On the dense path `eigenvalues` is the full spectrum; on the iterative
    path it holds the known 0 eigenvalue plus the two smallest computed
    Ritz values. Either way lambda2 == eigenvalues[1].
    """

    eigenvalues: tuple[float, ...]
    lambda2: float
    zero_tolerance: float = ZERO_TOLERANCE


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense 0/1 symmetric adjacency matrix with zero diagonal."""
    n = g.n_nodes
    a = np.zeros((n, n))
    rows = np.repeat(np.arange(n), g.degrees)
    a[rows, g.indices] = 1.0
    return a


def combinatorial_laplacian(g: Graph) -> np.ndarray:
    """Degree matrix minus adjacency matrix; all row sums are zero."""
    lap = -adjacency_matrix(g)
    np.fill_diagonal(lap, g.degrees.astype(float))
    return lap


def normalized_laplacian(g: Graph) -> np.ndarray:
    """Dense normalized Laplacian: 1 on the diagonal, -1/sqrt(d_i d_j) on edges.

    Raises SpectralError if any node is isolated (degree 0), since the
    inverse square-root degree scaling is undefined there.
    """
    degrees = g.degrees
    if (degrees == 0).any():
        bad = int(g.node_ids[int(np.argmin(degrees))])
        raise SpectralError(f"node {bad} is isolated (degree 0); normalized Laplacian undefined")
    inv_sqrt = 1.0 / np.sqrt(degrees.astype(float))
    lap = -(adjacency_matrix(g) * np.outer(inv_sqrt, inv_sqrt))
    np.fill_diagonal(lap, 1.0)
    return lap


def normalized_laplacian_sparse(g: Graph) -> sp.csr_matrix:
    """CSR normalized Laplacian for graphs too large for dense storage."""
    degrees = g.degrees
    if (degrees == 0).any():
        bad = int(g.node_ids[int(np.argmin(degrees))])
        raise SpectralError(f"node {bad} is isolated (degree 0); normalized Laplacian undefined")
    n = g.n_nodes
    inv_sqrt = 1.0 / np.sqrt(degrees.astype(float))
    rows = np.repeat(np.arange(n), g.degrees)
    vals = -inv_sqrt[rows] * inv_sqrt[g.indices]
    off = sp.csr_matrix((vals, g.indices.copy(), g.indptr.copy()), shape=(n, n))
    return off + sp.identity(n, format="csr")


def spectral_gap(
    g: Graph,
    *,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    zero_tolerance: float = ZERO_TOLERANCE,
    residual_tolerance: float = RESIDUAL_TOLERANCE,
    maxiter: int | None = None,
) -> SpectrumResult:
    """Second-smallest eigenvalue of the normalized Laplacian of g.

    Graphs up to `dense_threshold` nodes use a dense symmetric
    eigen-decomposition; larger ones use a Krylov solver on the two smallest
    eigenvalues, deflating the analytically known 0-eigenvector (components
    proportional to sqrt(degree)). Disconnected input yields lambda2 ~ 0
    rather than an error, matching the connectivity-level semantics.
    """
    if g.n_nodes < 2:
        raise SpectralError(f"spectral gap needs at least 2 nodes, got {g.n_nodes}")
    if g.n_nodes <= dense_threshold:
        eigenvalues = np.linalg.eigvalsh(normalized_laplacian(g))
        return SpectrumResult(
            eigenvalues=tuple(float(x) for x in eigenvalues),
            lambda2=float(eigenvalues[1]),
            zero_tolerance=zero_tolerance,
        )
    lam2, lam3 = _two_smallest_iterative(
        g, residual_tolerance=residual_tolerance, maxiter=maxiter
    )
    return SpectrumResult(
        eigenvalues=(0.0, lam2, lam3),
        lambda2=lam2,
        zero_tolerance=zero_tolerance,
    )


def _two_smallest_iterative(
    g: Graph, *, residual_tolerance: float, maxiter: int | None
) -> tuple[float, float]:
    """Two smallest nonzero-candidate eigenvalues of the normalized Laplacian.

    Works on M = 2I - L (largest eigenvalues of M are the smallest of L) and
    removes the known 0-eigenvector of L by rank-one deflation, so the
    dominant eigenpair of the deflated operator corresponds to lambda2.
    """
    n = g.n_nodes
    lap = normalized_laplacian_sparse(g)
    null = np.sqrt(g.degrees.astype(float))
    null /= np.linalg.norm(null)

    def matvec(x):
        y = 2.0 * x - lap @ x
        y -= 2.0 * (null @ x) * null
        return y

    op = spla.LinearOperator((n, n), matvec=matvec, dtype=float)
    # Deterministic start vector: ARPACK's default is global-RNG random.
    v0 = np.random.default_rng(0x5EED).standard_normal(n)
    cap = maxiter if maxiter is not None else 10 * n
    last_err: Exception | None = None
    for ncv in (32, 128):
        try:
            vals, vecs = spla.eigsh(
                op,
                k=2,
                which="LA",
                v0=v0,
                ncv=min(n - 1, ncv),
                maxiter=cap,
                tol=ARPACK_TOLERANCE,
            )
            break
        except spla.ArpackNoConvergence as err:
            last_err = err
    else:
        raise EigenConvergenceError(
            f"eigensolver did not converge within {cap} iterations on {n} nodes"
        ) from last_err

    lams = 2.0 - vals
    order = np.argsort(lams)
    lams = lams[order]
    vecs = vecs[:, order]
    for i in range(2):
        resid = np.linalg.norm(lap @ vecs[:, i] - lams[i] * vecs[:, i])
        if resid > residual_tolerance:
            raise EigenConvergenceError(
                f"Ritz pair residual {resid:.3e} exceeds {residual_tolerance:.1e}"
            )
    return float(lams[0]), float(lams[1])
