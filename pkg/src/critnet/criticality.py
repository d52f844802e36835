"""Local criticality scoring: per-node kappa, indications, and scores.

Each node's kappa is the spectral gap of its h-hop neighborhood divided by
log2 of its full-graph degree (leaves get +inf). Every node indicates the
member of its neighborhood with the lowest kappa (ties to the lowest id);
a node's score is the fraction of its neighborhood that indicated it, and
nodes with score exactly 1 are the critical nodes.
"""

from __future__ import annotations

import csv
import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import DisconnectedGraphError, Graph, GraphError, _extract, h_neighborhood, is_connected
from .spectral import DEFAULT_DENSE_THRESHOLD, spectral_gap

KAPPA_ROUND_DIGITS = 12


def round_significant(x: float, digits: int = KAPPA_ROUND_DIGITS) -> float:
    """Round to `digits` significant decimal digits; inf and 0 pass through.

    Kappa comparisons happen on rounded values so eigensolver noise below
    the rounding precision cannot flip the critical-node selection.
    """
    if x == 0.0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits - 1}e}")


@dataclass(frozen=True)
class NodeAssessment:
    node: int
    degree: int
    kappa: float
    neighborhood_size: int
    lowest_k_pointer: int
    indications: int
    score: float


@dataclass(frozen=True)
class CriticalityReport:
    h: int
    assessments: dict[int, NodeAssessment]
    critical_nodes: frozenset[int]


def kappa(
    g: Graph, v: int, h: int, *, dense_threshold: int = DEFAULT_DENSE_THRESHOLD
) -> float:
    """Criticality value of node v: neighborhood spectral gap / log2(degree).

    Degree is taken in the full graph g. Degree-1 nodes are the least
    critical and get +inf; isolated nodes have no usable neighborhood.
    """
    if h < 1:
        raise GraphError(f"hop radius must be >= 1, got {h}")
    iv = g.index_of(v)
    degree = int(g.degrees[iv])
    if degree == 0:
        raise GraphError(f"node {v} is isolated; kappa is undefined")
    if degree == 1:
        return math.inf
    gap = spectral_gap(h_neighborhood(g, v, h).graph, dense_threshold=dense_threshold)
    return gap.lambda2 / math.log2(degree)


_POOL_STATE: tuple | None = None


def _pool_init(g: Graph, h: int, dense_threshold: int) -> None:
    global _POOL_STATE
    _POOL_STATE = (g, h, dense_threshold)


def _pool_lambda2(rep: int) -> float:
    g, h, dense_threshold = _POOL_STATE
    return _neighborhood_lambda2(g, rep, h, dense_threshold)


def _neighborhood_lambda2(g: Graph, center: int, h: int, dense_threshold: int) -> float:
    sub = _extract(g, g.ball(center, h))
    return spectral_gap(sub, dense_threshold=dense_threshold).lambda2


def run_indication_round(
    g: Graph,
    h: int,
    *,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    workers: int = 1,
) -> CriticalityReport:
    """Compute every node's kappa, deliver indications, and score all nodes.

    Nodes whose h-neighborhoods contain identical node sets share one
    spectral-gap computation (common once h approaches the diameter), and
    the per-neighborhood solves can be spread over `workers` processes;
    the report is deterministic either way.
    """
    if h < 1:
        raise GraphError(f"hop radius must be >= 1, got {h}")
    if g.n_nodes < 2:
        raise GraphError(f"need at least 2 nodes, got {g.n_nodes}")
    if not is_connected(g):
        raise DisconnectedGraphError("indication round requires a connected graph")

    n = g.n_nodes
    degrees = g.degrees
    sizes = np.zeros(n, dtype=np.int64)
    digests: list[bytes] = [b""] * n
    representative: dict[bytes, int] = {}
    for v in range(n):
        members = g.ball(v, h)
        sizes[v] = len(members)
        dig = hashlib.blake2b(members.tobytes(), digest_size=16).digest()
        digests[v] = dig
        representative.setdefault(dig, v)

    lambda2_by_digest = _solve_neighborhoods(g, h, representative, dense_threshold, workers)

    kappas = np.empty(n)
    rounded = np.empty(n)
    for v in range(n):
        if degrees[v] == 1:
            kappas[v] = math.inf
        else:
            kappas[v] = lambda2_by_digest[digests[v]] / math.log2(float(degrees[v]))
        rounded[v] = round_significant(kappas[v])

    pointers = np.empty(n, dtype=np.int64)
    indications = np.zeros(n, dtype=np.int64)
    for v in range(n):
        members = g.ball(v, h)
        member_kappas = rounded[members]
        # lowest rounded kappa, ties to the lowest id (= lowest internal index)
        target = int(members[member_kappas == member_kappas.min()].min())
        pointers[v] = target
        indications[target] += 1

    assessments: dict[int, NodeAssessment] = {}
    critical: set[int] = set()
    for v in range(n):
        node = int(g.node_ids[v])
        score = indications[v] / sizes[v]
        assessments[node] = NodeAssessment(
            node=node,
            degree=int(degrees[v]),
            kappa=float(kappas[v]),
            neighborhood_size=int(sizes[v]),
            lowest_k_pointer=int(g.node_ids[pointers[v]]),
            indications=int(indications[v]),
            score=float(score),
        )
        if indications[v] == sizes[v]:
            critical.add(node)
    return CriticalityReport(h=h, assessments=assessments, critical_nodes=frozenset(critical))


def _solve_neighborhoods(
    g: Graph,
    h: int,
    representative: dict[bytes, int],
    dense_threshold: int,
    workers: int,
) -> dict[bytes, float]:
    items = list(representative.items())
    if workers <= 1 or len(items) < 4:
        return {
            dig: _neighborhood_lambda2(g, rep, h, dense_threshold) for dig, rep in items
        }
    reps = [rep for _, rep in items]
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_pool_init, initargs=(g, h, dense_threshold)
    ) as pool:
        gaps = list(pool.map(_pool_lambda2, reps, chunksize=max(1, len(reps) // (8 * workers))))
    return {dig: gap for (dig, _), gap in zip(items, gaps)}


def critical_nodes(report: CriticalityReport) -> set[int]:
    """Nodes with score exactly 1; never empty on a connected graph."""
    return {
        v
        for v, a in report.assessments.items()
        if a.indications == a.neighborhood_size
    }


REPORT_FIELDS = [
    "node_id",
    "degree",
    "neighborhood_size",
    "kappa",
    "lowest_k_pointer",
    "indications",
    "score",
]


def write_report_csv(report: CriticalityReport, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_FIELDS)
        for node in sorted(report.assessments):
            a = report.assessments[node]
            writer.writerow(
                [
                    a.node,
                    a.degree,
                    a.neighborhood_size,
                    repr(a.kappa),
                    a.lowest_k_pointer,
                    a.indications,
                    repr(a.score),
                ]
            )


def read_report_csv(path: str | Path) -> list[NodeAssessment]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(
                NodeAssessment(
                    node=int(row["node_id"]),
                    degree=int(row["degree"]),
                    kappa=float(row["kappa"]),
                    neighborhood_size=int(row["neighborhood_size"]),
                    lowest_k_pointer=int(row["lowest_k_pointer"]),
                    indications=int(row["indications"]),
                    score=float(row["score"]),
                )
            )
    return out
