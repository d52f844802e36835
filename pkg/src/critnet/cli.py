"""Command-line front end.

Subcommands cover the whole pipeline: generate networks, build fragile
variants, score criticality, navigate to a critical node, run the attack
comparison, and exercise the distributed protocol. All file output is CSV
or whitespace edge lists; errors exit nonzero with a one-line diagnostic.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from . import distsim
from .criticality import run_indication_round, write_report_csv
from .generators import FragileResult, GenSpec, generate
from .graph import Graph, GraphError, read_edge_list, write_edge_list
from .harness import analyze_graph, attack_compare, write_attack_csv
from .navigation import NavigationError, navigate, trace_to_csv
from .spectral import DEFAULT_DENSE_THRESHOLD, SpectralError


def _base_spec(args, *, fragile: bool = False) -> GenSpec:
    model = f"fragile-{args.model}" if fragile else args.model
    kwargs = dict(model=model, n=args.n, seed=args.seed)
    if args.model == "er":
        if args.p is None:
            raise GraphError("--p is required for the er model")
        kwargs["p"] = args.p
    else:
        if args.m is None:
            raise GraphError("--m is required for the ba model")
        kwargs["m"] = args.m
    if fragile:
        kwargs["fragility_fraction"] = args.fraction
    return GenSpec(**kwargs)


def _cmd_generate(args) -> int:
    g = generate(_base_spec(args))
    assert isinstance(g, Graph)
    write_edge_list(g, args.out)
    print(f"wrote {g.n_nodes} nodes, {g.edge_count} edges to {args.out}")
    return 0


def _cmd_fragile(args) -> int:
    fr = generate(_base_spec(args, fragile=True))
    assert isinstance(fr, FragileResult)
    edges_path = f"{args.out_prefix}.edges"
    removals_path = f"{args.out_prefix}.removals.csv"
    write_edge_list(fr.graph, edges_path)
    with open(removals_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "node_id", "kind"])
        for i, v in enumerate(fr.removal_trace):
            w.writerow([i, v, "eroded"])
        w.writerow([len(fr.removal_trace), fr.fragmenting_node, "fragmenting"])
    sizes = ",".join(str(s) for s in fr.reference_components.sizes)
    print(
        f"fragile network: {fr.graph.n_nodes} nodes, {fr.graph.edge_count} edges "
        f"-> {edges_path}"
    )
    print(
        f"fragmenting node {fr.fragmenting_node} displaces "
        f"{fr.displaced_fraction:.1%}; components after removal: {sizes}"
    )
    return 0


def _cmd_analyze(args) -> int:
    analysis = analyze_graph(
        read_edge_list(args.graph),
        args.h,
        dense_threshold=args.dense_threshold,
        workers=args.workers,
    )
    write_report_csv(analysis.report, args.out)
    critical = ",".join(str(v) for v in sorted(analysis.report.critical_nodes))
    print(f"analyzed {analysis.n_nodes} nodes, {analysis.n_edges} edges at h={args.h}")
    if analysis.restricted_to_largest:
        print("input was disconnected; analyzed its largest component")
    print(f"critical nodes: {critical}")
    if args.stats:
        print(
            f"neighborhood sizes: min={analysis.size_min} "
            f"mean={analysis.size_mean:.1f} max={analysis.size_max}"
        )
    print(f"report -> {args.out}")
    return 0


def _cmd_navigate(args) -> int:
    g = read_edge_list(args.graph)
    report = run_indication_round(g, args.h, dense_threshold=args.dense_threshold)
    trace = navigate(g, report, args.start, args.seed)
    sys.stdout.write(trace_to_csv(trace, report))
    print(f"# reached {trace.terminal} in {len(trace.steps)} steps")
    return 0


def _cmd_attack_compare(args) -> int:
    base = argparse.Namespace(**vars(args))
    specs = []
    for i in range(args.count):
        base.seed = args.seed + i
        specs.append(_base_spec(base))
    summary = attack_compare(
        specs, args.h, dense_threshold=args.dense_threshold, workers=args.workers
    )
    write_attack_csv(summary, args.out)
    print(
        f"r_squared={summary.r_squared:.6f} over {args.count} {args.model} "
        f"networks at h={args.h} -> {args.out}"
    )
    return 0


def _cmd_simulate(args) -> int:
    g = read_edge_list(args.graph)
    sim_report, stats = distsim.simulate(
        g, args.h, dense_threshold=args.dense_threshold, trace_path=args.trace
    )
    central = run_indication_round(g, args.h, dense_threshold=args.dense_threshold)
    mismatched = []
    for v, a in central.assessments.items():
        b = sim_report.assessments[v]
        if (
            a.lowest_k_pointer != b.lowest_k_pointer
            or a.indications != b.indications
            or a.neighborhood_size != b.neighborhood_size
            or not math.isclose(a.kappa, b.kappa, rel_tol=0.0, abs_tol=1e-12)
        ):
            mismatched.append(v)
    print(
        f"rounds={stats.rounds} messages={stats.total_messages} "
        f"max_state_nodes={stats.max_node_state_nodes}"
    )
    if mismatched:
        print(f"error: distributed run disagrees at nodes {mismatched[:10]}", file=sys.stderr)
        return 2
    print(f"distributed report matches centralized on all {g.n_nodes} nodes")
    return 0


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True, choices=["er", "ba"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--p", type=float, default=None, help="edge probability (er)")
    p.add_argument("--m", type=int, default=None, help="edges per new node (ba)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="critnet",
        description="Locate robustness-critical network nodes from local spectral gaps.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded random network as an edge list")
    _add_model_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("fragile", help="erode a network to a fragile state")
    _add_model_args(p)
    p.add_argument("--fraction", type=float, default=0.05)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_fragile)

    p = sub.add_parser("analyze", help="score every node and report critical ones")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--dense-threshold", type=int, default=DEFAULT_DENSE_THRESHOLD)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("navigate", help="walk from a start node to a critical node")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--start", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dense-threshold", type=int, default=DEFAULT_DENSE_THRESHOLD)
    p.set_defaults(func=_cmd_navigate)

    p = sub.add_parser("attack-compare", help="correlate removal damage across networks")
    _add_model_args(p)
    p.add_argument("--count", required=True, type=int)
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--dense-threshold", type=int, default=DEFAULT_DENSE_THRESHOLD)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_attack_compare)

    p = sub.add_parser("simulate", help="run the message-passing protocol and verify it")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--trace", default=None, help="write one line per message here")
    p.add_argument("--dense-threshold", type=int, default=DEFAULT_DENSE_THRESHOLD)
    p.set_defaults(func=_cmd_simulate)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, SpectralError, NavigationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
