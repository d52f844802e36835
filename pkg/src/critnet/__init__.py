"""Locating nodes critical to network robustness from local spectral gaps.

Each node's criticality is the spectral gap (second-smallest eigenvalue of
the normalized Laplacian) of its h-hop neighborhood, normalized by the log
of its degree. Nodes point at the lowest-kappa member of their
neighborhood; a node indicated by its entire neighborhood is critical.
"""

from .criticality import (
    CriticalityReport,
    NodeAssessment,
    critical_nodes,
    kappa,
    read_report_csv,
    round_significant,
    run_indication_round,
    write_report_csv,
)
from .distsim import ProtocolStats, message_stats, run_protocol, simulate
from .generators import FragileResult, GenSpec, gen_ba, gen_er, gen_fragile, generate
from .graph import (
    ComponentSet,
    DisconnectedGraphError,
    Graph,
    GraphError,
    Subgraph,
    build_graph,
    connected_components,
    degree_sequence,
    h_neighborhood,
    induced_subgraph,
    is_connected,
    read_edge_list,
    remove_node,
    remove_nodes,
    write_edge_list,
)
from .harness import (
    DEFAULT_H,
    AttackOutcome,
    CorrelationSummary,
    FragilityComparison,
    TraceAnalysis,
    analyze_graph,
    analyze_trace,
    attack_compare,
    fragility_report,
    lambda2_after_removal,
    pearson_r_squared,
    read_attack_csv,
    write_attack_csv,
)
from .navigation import (
    NavigationError,
    NavigationTrace,
    SplitMix64,
    StepKind,
    knowers_of_lower_kappa,
    navigate,
)
from .spectral import (
    EigenConvergenceError,
    SpectralError,
    SpectrumResult,
    adjacency_matrix,
    combinatorial_laplacian,
    normalized_laplacian,
    normalized_laplacian_sparse,
    spectral_gap,
)

__version__ = "0.1.0"

__all__ = [
    "AttackOutcome",
    "ComponentSet",
    "DEFAULT_H",
    "CorrelationSummary",
    "CriticalityReport",
    "DisconnectedGraphError",
    "EigenConvergenceError",
    "FragileResult",
    "FragilityComparison",
    "GenSpec",
    "Graph",
    "GraphError",
    "NavigationError",
    "NavigationTrace",
    "NodeAssessment",
    "ProtocolStats",
    "SpectralError",
    "SpectrumResult",
    "SplitMix64",
    "StepKind",
    "Subgraph",
    "TraceAnalysis",
    "adjacency_matrix",
    "analyze_graph",
    "analyze_trace",
    "attack_compare",
    "build_graph",
    "combinatorial_laplacian",
    "connected_components",
    "critical_nodes",
    "degree_sequence",
    "fragility_report",
    "gen_ba",
    "gen_er",
    "gen_fragile",
    "generate",
    "h_neighborhood",
    "induced_subgraph",
    "is_connected",
    "kappa",
    "knowers_of_lower_kappa",
    "lambda2_after_removal",
    "message_stats",
    "navigate",
    "normalized_laplacian",
    "normalized_laplacian_sparse",
    "pearson_r_squared",
    "read_attack_csv",
    "read_edge_list",
    "read_report_csv",
    "remove_node",
    "remove_nodes",
    "round_significant",
    "run_indication_round",
    "run_protocol",
    "simulate",
    "spectral_gap",
    "write_attack_csv",
    "write_edge_list",
    "write_report_csv",
]
