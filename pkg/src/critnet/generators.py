"""Random graph generators used throughout the experiments.

Three families: Erdos-Renyi G(n, p), Barabasi-Albert preferential attachment,
and "fragile" variants where degree-biased node removal erodes a network to
the point where one further removal shatters it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import (
    ComponentSet,
    Graph,
    GraphError,
    build_graph,
    connected_components,
    induced_subgraph,
    remove_node,
)

MIN_FRAGILE_NODES = 10


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one generated network."""

    model: str
    n: int
    p: float = 0.0
    m: int = 0
    seed: int = 0
    fragility_fraction: float = 0.05

    def __post_init__(self):
        if self.model not in ("er", "ba", "fragile-er", "fragile-ba"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.model in ("er", "fragile-er") and not 0.0 < self.p < 1.0:
            raise ValueError(f"p must be in (0, 1), got {self.p}")
        if self.model in ("ba", "fragile-ba") and not 1 <= self.m < self.n:
            raise ValueError(f"m must satisfy 1 <= m < n, got m={self.m}, n={self.n}")
        if not 0.0 < self.fragility_fraction <= 0.5:
            raise ValueError(
                f"fragility_fraction must be in (0, 0.5], got {self.fragility_fraction}"
            )


@dataclass(frozen=True)
class FragileResult:
    """A nearly-shattered network plus the removal that finishes the job.

    graph is the state right before that removal; reference_components are
    the pieces left after it; removal_trace lists the committed deletions
    that got there, in order.
    """

    graph: Graph
    fragmenting_node: int
    reference_components: ComponentSet
    removal_trace: tuple[int, ...]

    @property
    def displaced_fraction(self) -> float:
        sizes = self.reference_components.sizes
        return float(sum(sizes[1:]) / sum(sizes))


def gen_er(n: int, p: float, seed: int) -> Graph:
    """G(n, p) restricted to its largest connected component.

    Sparse regimes of interest sit below the connectivity threshold, so
    taking the giant component is part of the recipe, not an error path.
    """
    rng = np.random.default_rng(seed)
    rows = []
    chunk = max(1, min(n, 4_000_000 // max(n, 1)))
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        block = rng.random((stop - start, n)) < p
        r, c = np.nonzero(block)
        r += start
        keep = r < c
        rows.append(np.stack([r[keep], c[keep]], axis=1))
    edges = np.concatenate(rows) if rows else np.empty((0, 2), dtype=np.int64)
    if len(edges) == 0:
        raise GraphError(f"G({n}, {p}) draw produced no edges; raise p or reseed")
    g = build_graph(edges)
    comps = connected_components(g)
    if len(comps.components) > 1:
        g = induced_subgraph(g, sorted(comps.components[0]))
    return g


def gen_ba(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment: complete seed on m+1 nodes, then each new
    node attaches to m distinct endpoints sampled from the degree-weighted
    repeated-nodes list."""
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    repeated: list[int] = []
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            edges.append((i, j))
            repeated.extend((i, j))
    for v in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[rng.integers(len(repeated))])
        for t in sorted(targets):
            edges.append((v, t))
            repeated.extend((v, t))
    return build_graph(edges)


def _degree_biased_pick(g: Graph, rng: np.random.Generator) -> int:
    weights = np.cumsum(g.degrees.astype(np.float64))
    idx = int(np.searchsorted(weights, rng.random() * weights[-1], side="right"))
    return int(g.node_ids[min(idx, g.n_nodes - 1)])


def gen_fragile(
    base: Graph | GenSpec, fragility_fraction: float = 0.05, seed: int = 0
) -> FragileResult:
    """Erode a connected graph one degree-biased removal at a time until a
    sampled removal would leave at least fragility_fraction of the survivors
    outside the largest component; return the graph from just before it.

    Each committed removal restricts the graph to its largest component,
    mirroring how real networks shed stragglers. Fails if the graph shrinks
    below MIN_FRAGILE_NODES first; retrying with another seed is the
    caller's job.
    """
    if not 0.0 < fragility_fraction <= 0.5:
        raise ValueError(
            f"fragility_fraction must be in (0, 0.5], got {fragility_fraction}"
        )
    if isinstance(base, GenSpec):
        built = generate(base)
        assert isinstance(built, Graph)
        base = built
    rng = np.random.default_rng(seed)
    comps = connected_components(base)
    g = base
    if len(comps.components) > 1:
        g = induced_subgraph(g, sorted(comps.components[0]))
    if g.n_nodes < MIN_FRAGILE_NODES:
        raise GraphError(f"base graph too small to erode: {g.n_nodes} nodes")
    trace: list[int] = []
    while True:
        victim = _degree_biased_pick(g, rng)
        rest = remove_node(g, victim)
        comps = connected_components(rest)
        displaced = rest.n_nodes - comps.sizes[0]
        if displaced >= fragility_fraction * rest.n_nodes:
            return FragileResult(
                graph=g,
                fragmenting_node=victim,
                reference_components=comps,
                removal_trace=tuple(trace),
            )
        trace.append(victim)
        if len(comps.components) > 1:
            g = induced_subgraph(rest, sorted(comps.components[0]))
        else:
            g = rest
        if g.n_nodes < MIN_FRAGILE_NODES:
            raise GraphError(
                f"erosion hit {g.n_nodes} nodes without finding a fragility "
                f"point at fraction {fragility_fraction}; reseed or lower it"
            )


def generate(spec: GenSpec) -> Graph | FragileResult:
    """Build the network a GenSpec describes.

    Fragile models erode with seed+1 so the erosion stream is independent
    of the base generator's.
    """
    if spec.model == "er":
        return gen_er(spec.n, spec.p, spec.seed)
    if spec.model == "ba":
        return gen_ba(spec.n, spec.m, spec.seed)
    base = GenSpec(
        model=spec.model.removeprefix("fragile-"),
        n=spec.n,
        p=spec.p,
        m=spec.m,
        seed=spec.seed,
    )
    return gen_fragile(base, spec.fragility_fraction, spec.seed + 1)
