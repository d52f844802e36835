"""Independent reference implementations used only by the tests.

Everything here is deliberately written without the production package:
plain dict/list graph handling, a cyclic-Jacobi eigensolver instead of
LAPACK, and a from-scratch scoring pipeline. Agreement between these and
the package is the point of the comparisons, so keep them separate.
"""

from __future__ import annotations

import math
from collections import deque


def edges_to_adj(edges) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def bfs_distances(adj: dict[int, set[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def ball_members(adj: dict[int, set[int]], center: int, h: int) -> list[int]:
    dist = bfs_distances(adj, center)
    return sorted(u for u, d in dist.items() if d <= h)


def induced_edges(edges, members) -> list[tuple[int, int]]:
    keep = set(members)
    return [(u, v) for u, v in edges if u in keep and v in keep]


def connected(adj: dict[int, set[int]]) -> bool:
    start = next(iter(adj))
    return len(bfs_distances(adj, start)) == len(adj)


def normalized_laplacian_rows(edges) -> tuple[list[int], list[list[float]]]:
    """Nodes in ascending order plus the normalized Laplacian as row lists."""
    adj = edges_to_adj(edges)
    nodes = sorted(adj)
    pos = {u: i for i, u in enumerate(nodes)}
    n = len(nodes)
    mat = [[0.0] * n for _ in range(n)]
    for i, u in enumerate(nodes):
        mat[i][i] = 1.0
    for u, v in edges:
        w = -1.0 / math.sqrt(len(adj[u]) * len(adj[v]))
        mat[pos[u]][pos[v]] = w
        mat[pos[v]][pos[u]] = w
    return nodes, mat


def jacobi_eigenvalues(mat: list[list[float]], sweeps: int = 100, tol: float = 1e-13) -> list[float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations."""
    n = len(mat)
    a = [row[:] for row in mat]
    for _ in range(sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p][q]) < tol / max(n, 1):
                    continue
                # rotation angle from the standard 2x2 symmetric Schur decomposition
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    return sorted(a[i][i] for i in range(n))


def oracle_spectrum(edges) -> list[float]:
    _, mat = normalized_laplacian_rows(edges)
    return jacobi_eigenvalues(mat)


def oracle_lambda2(edges) -> float:
    return oracle_spectrum(edges)[1]


def round_12_significant(x: float) -> float:
    if x == 0.0 or math.isinf(x):
        return x
    return float(f"{x:.11e}")


def oracle_kappa(edges, v: int, h: int) -> float:
    adj = edges_to_adj(edges)
    degree = len(adj[v])
    if degree == 1:
        return math.inf
    sub = induced_edges(edges, ball_members(adj, v, h))
    return oracle_lambda2(sub) / math.log2(degree)


def oracle_report(edges, h: int):
    """Full scoring pass: kappas, pointers, indications, scores, criticals."""
    adj = edges_to_adj(edges)
    nodes = sorted(adj)
    kappas = {v: oracle_kappa(edges, v, h) for v in nodes}
    rounded = {v: round_12_significant(k) for v, k in kappas.items()}
    balls = {v: ball_members(adj, v, h) for v in nodes}
    pointers = {}
    indications = {v: 0 for v in nodes}
    for v in nodes:
        target = min(balls[v], key=lambda u: (rounded[u], u))
        pointers[v] = target
        indications[target] += 1
    scores = {v: indications[v] / len(balls[v]) for v in nodes}
    criticals = {v for v in nodes if scores[v] == 1.0}
    return {
        "kappas": kappas,
        "pointers": pointers,
        "indications": indications,
        "scores": scores,
        "criticals": criticals,
        "balls": balls,
    }
