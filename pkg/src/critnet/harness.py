"""Experiment drivers: attack comparison, fragility severity, trace analysis.

The attack experiment removes, from replicas of each generated network, the
located critical node and the highest-degree node, and correlates the two
spectral-gap drops. The fragility experiment checks that removing every
located critical node shatters a fragile network at least as badly as the
removal its construction was aiming at.
"""

from __future__ import annotations

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .criticality import CriticalityReport, run_indication_round
from .generators import FragileResult, generate
from .graph import (
    Graph,
    connected_components,
    induced_subgraph,
    is_connected,
    read_edge_list,
    remove_nodes,
)
from .spectral import DEFAULT_DENSE_THRESHOLD, SpectralError, spectral_gap

logger = logging.getLogger(__name__)

DEFAULT_H = {"ba": 4, "er": 6}


@dataclass(frozen=True)
class AttackOutcome:
    """Spectral-gap damage from one critical-node and one max-degree removal."""

    network_seed: int
    delta_lambda2_critical: float
    delta_lambda2_maxdegree: float
    removed_critical: int
    removed_maxdegree: int


@dataclass(frozen=True)
class CorrelationSummary:
    """Scatter pairs (x = max-degree damage, y = critical-node damage)."""

    pairs: tuple[tuple[float, float], ...]
    r_squared: float
    outcomes: tuple[AttackOutcome, ...] = ()


@dataclass(frozen=True)
class FragilityComparison:
    network_id: str
    h: int
    reference_node: int
    reference_components: tuple[int, ...]
    located_critical: frozenset[int]
    resulting_components: tuple[int, ...]
    disconnected_reference: int
    disconnected_located: int


def lambda2_after_removal(
    g: Graph, nodes, *, dense_threshold: int = DEFAULT_DENSE_THRESHOLD
) -> float:
    """Spectral gap of g minus the given nodes; 0.0 when the remainder is
    disconnected (or too small to carry a gap), since the zero eigenvalue
    then has multiplicity >= 2."""
    rest = remove_nodes(g, nodes)
    if rest.n_nodes < 2 or not is_connected(rest):
        return 0.0
    return spectral_gap(rest, dense_threshold=dense_threshold).lambda2


def _attack_one(args) -> AttackOutcome:
    spec, h, dense_threshold = args
    g = generate(spec)
    assert isinstance(g, Graph)
    try:
        base = spectral_gap(g, dense_threshold=dense_threshold).lambda2
        report = run_indication_round(g, h, dense_threshold=dense_threshold)
        rng = np.random.default_rng([spec.seed, 0xA77AC])
        critical = sorted(report.critical_nodes)
        chosen_critical = critical[rng.integers(len(critical))]
        degs = g.degrees
        top = g.node_ids[degs == degs.max()]
        chosen_max = int(top[rng.integers(len(top))])
        d_crit = base - lambda2_after_removal(
            g, [chosen_critical], dense_threshold=dense_threshold
        )
        d_max = base - lambda2_after_removal(
            g, [chosen_max], dense_threshold=dense_threshold
        )
    except SpectralError as exc:
        raise SpectralError(f"seed {spec.seed}: {exc}") from exc
    return AttackOutcome(
        network_seed=spec.seed,
        delta_lambda2_critical=d_crit,
        delta_lambda2_maxdegree=d_max,
        removed_critical=chosen_critical,
        removed_maxdegree=chosen_max,
    )


def pearson_r_squared(pairs) -> float:
    xs = np.array([p[0] for p in pairs], dtype=np.float64)
    ys = np.array([p[1] for p in pairs], dtype=np.float64)
    if len(xs) < 2:
        raise ValueError(f"need >= 2 pairs for a correlation, got {len(xs)}")
    if np.ptp(xs) == 0.0 or np.ptp(ys) == 0.0:
        logger.warning("degenerate scatter (zero variance); r^2 undefined")
        return math.nan
    return float(np.corrcoef(xs, ys)[0, 1] ** 2)


def attack_compare(
    specs,
    h: int,
    *,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    workers: int = 1,
) -> CorrelationSummary:
    """Run both removal strategies on every spec's network and correlate
    the spectral-gap damage across the batch."""
    jobs = [(spec, h, dense_threshold) for spec in specs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_attack_one, jobs))
    else:
        outcomes = [_attack_one(j) for j in jobs]
    pairs = tuple(
        (o.delta_lambda2_maxdegree, o.delta_lambda2_critical) for o in outcomes
    )
    return CorrelationSummary(
        pairs=pairs, r_squared=pearson_r_squared(pairs), outcomes=tuple(outcomes)
    )


def _component_sizes(g: Graph) -> tuple[int, ...]:
    if g.n_nodes == 0:
        return ()
    return connected_components(g).sizes


def fragility_report(
    fr: FragileResult,
    h: int,
    *,
    network_id: str = "",
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> FragilityComparison:
    """Compare the construction's fragmenting removal against removing all
    critical nodes the scoring locates at radius h."""
    n_before = fr.graph.n_nodes
    ref_sizes = fr.reference_components.sizes
    report = run_indication_round(fr.graph, h, dense_threshold=dense_threshold)
    located = sorted(report.critical_nodes)
    res_sizes = _component_sizes(remove_nodes(fr.graph, located))
    largest_res = res_sizes[0] if res_sizes else 0
    return FragilityComparison(
        network_id=network_id,
        h=h,
        reference_node=fr.fragmenting_node,
        reference_components=ref_sizes,
        located_critical=frozenset(located),
        resulting_components=res_sizes,
        disconnected_reference=n_before - ref_sizes[0] - 1,
        disconnected_located=n_before - largest_res - len(located),
    )


@dataclass(frozen=True)
class TraceAnalysis:
    report: CriticalityReport
    n_nodes: int
    n_edges: int
    size_min: int
    size_mean: float
    size_max: int
    restricted_to_largest: bool


def analyze_graph(
    g: Graph, h: int, *, dense_threshold: int = DEFAULT_DENSE_THRESHOLD, workers: int = 1
) -> TraceAnalysis:
    restricted = False
    comps = connected_components(g)
    if len(comps.components) > 1:
        logger.warning(
            "graph is disconnected (%d components); analyzing the largest "
            "(%d of %d nodes)",
            len(comps.components),
            comps.sizes[0],
            g.n_nodes,
        )
        g = induced_subgraph(g, sorted(comps.components[0]))
        restricted = True
    report = run_indication_round(g, h, dense_threshold=dense_threshold, workers=workers)
    sizes = np.array(
        [a.neighborhood_size for a in report.assessments.values()], dtype=np.int64
    )
    return TraceAnalysis(
        report=report,
        n_nodes=g.n_nodes,
        n_edges=g.edge_count,
        size_min=int(sizes.min()),
        size_mean=float(sizes.mean()),
        size_max=int(sizes.max()),
        restricted_to_largest=restricted,
    )


def analyze_trace(
    path: str | Path,
    h: int,
    *,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    workers: int = 1,
) -> TraceAnalysis:
    """Edge-list file in, criticality report plus neighborhood-size stats out.

    Disconnected inputs are restricted to their largest component with a
    warning rather than rejected."""
    return analyze_graph(
        read_edge_list(path), h, dense_threshold=dense_threshold, workers=workers
    )


ATTACK_FIELDS = [
    "network_seed",
    "removed_critical",
    "removed_maxdegree",
    "delta_lambda2_critical",
    "delta_lambda2_maxdegree",
]


def write_attack_csv(summary: CorrelationSummary, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(ATTACK_FIELDS)
        for o in summary.outcomes:
            w.writerow(
                [
                    o.network_seed,
                    o.removed_critical,
                    o.removed_maxdegree,
                    repr(o.delta_lambda2_critical),
                    repr(o.delta_lambda2_maxdegree),
                ]
            )


def read_attack_csv(path: str | Path) -> CorrelationSummary:
    outcomes = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            outcomes.append(
                AttackOutcome(
                    network_seed=int(row["network_seed"]),
                    delta_lambda2_critical=float(row["delta_lambda2_critical"]),
                    delta_lambda2_maxdegree=float(row["delta_lambda2_maxdegree"]),
                    removed_critical=int(row["removed_critical"]),
                    removed_maxdegree=int(row["removed_maxdegree"]),
                )
            )
    pairs = tuple(
        (o.delta_lambda2_maxdegree, o.delta_lambda2_critical) for o in outcomes
    )
    return CorrelationSummary(
        pairs=pairs, r_squared=pearson_r_squared(pairs), outcomes=tuple(outcomes)
    )
