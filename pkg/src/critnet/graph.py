"""Immutable undirected simple graphs with CSR adjacency storage.

External node ids are arbitrary non-negative integers; internally nodes are
re-indexed to 0..n-1 in ascending id order, so sorting internal indices is
the same as sorting by external id.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Invalid graph input or an operation on a missing node."""


class DisconnectedGraphError(GraphError):
    """Operation requires a connected graph."""


def _gather_rows(indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Concatenate the CSR adjacency rows for `rows`, preserving row order."""
    starts = indptr[rows]
    lens = indptr[rows + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    cum = np.concatenate(([0], np.cumsum(lens)[:-1]))
    pos = np.arange(total, dtype=np.int64) - np.repeat(cum, lens) + np.repeat(starts, lens)
    return indices[pos]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph: no self-loops, no parallel edges.

    node_ids: external ids, strictly ascending; position = internal index.
    indptr/indices: CSR adjacency over internal indices, sorted per row.
    """

    node_ids: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    edge_count: int

    def __post_init__(self) -> None:
        for arr in (self.node_ids, self.indptr, self.indices):
            arr.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return len(self.node_ids)

    @property
    def degrees(self) -> np.ndarray:
        """Degree per internal index."""
        return np.diff(self.indptr)

    @property
    def adjacency(self) -> tuple[np.ndarray, ...]:
        """Per-node sorted arrays of internal neighbor indices."""
        return tuple(
            self.indices[self.indptr[i] : self.indptr[i + 1]] for i in range(self.n_nodes)
        )

    def has_node(self, node_id: int) -> bool:
        i = np.searchsorted(self.node_ids, node_id)
        return i < self.n_nodes and self.node_ids[i] == node_id

    def index_of(self, node_id: int) -> int:
        i = int(np.searchsorted(self.node_ids, node_id))
        if i >= self.n_nodes or self.node_ids[i] != node_id:
            raise GraphError(f"node {node_id} is not in the graph")
        return i

    def degree_of(self, node_id: int) -> int:
        return int(self.degrees[self.index_of(node_id)])

    def neighbors(self, node_id: int) -> np.ndarray:
        """External ids adjacent to `node_id`, ascending."""
        i = self.index_of(node_id)
        return self.node_ids[self.indices[self.indptr[i] : self.indptr[i + 1]]]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each edge once as (u, v) external ids with u < v."""
        for i in range(self.n_nodes):
            u = int(self.node_ids[i])
            for j in self.indices[self.indptr[i] : self.indptr[i + 1]]:
                if j > i:
                    yield u, int(self.node_ids[j])

    def ball(self, center: int, h: int) -> np.ndarray:
        """Sorted internal indices of all nodes at BFS distance <= h of `center`."""
        visited = np.zeros(self.n_nodes, dtype=bool)
        visited[center] = True
        frontier = np.array([center], dtype=np.int64)
        for _ in range(h):
            nbrs = _gather_rows(self.indptr, self.indices, frontier)
            nbrs = nbrs[~visited[nbrs]]
            if nbrs.size == 0:
                break
            visited[nbrs] = True
            frontier = np.unique(nbrs)
        return np.flatnonzero(visited)


@dataclass(frozen=True)
class Subgraph:
    """Connected induced subgraph around a center node.

    parent_map[i] is the parent-graph internal index of subgraph-internal
    index i; center indexes into the subgraph.
    """

    graph: Graph
    parent_map: np.ndarray
    center: int

    def __post_init__(self) -> None:
        self.parent_map.setflags(write=False)

    @property
    def center_id(self) -> int:
        return int(self.graph.node_ids[self.center])

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes


@dataclass(frozen=True)
class ComponentSet:
    """Connected components as external-id sets, largest first."""

    components: tuple[frozenset[int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def __len__(self) -> int:
        return len(self.components)


def build_graph(edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from (u, v) pairs of non-negative external ids.

    Duplicate edges (in either orientation) collapse to one; self-loops are
    rejected; an empty edge list is rejected because it yields no usable graph.
    """
    pairs = np.asarray(list(edges))
    if pairs.size == 0:
        raise GraphError("edge list is empty")
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise GraphError("edges must be (u, v) pairs")
    if pairs.dtype.kind not in "iu":
        raise GraphError("node ids must be integers")
    pairs = pairs.astype(np.int64)
    if (pairs < 0).any():
        bad = pairs[(pairs < 0).any(axis=1)][0]
        raise GraphError(f"node ids must be non-negative, got edge ({bad[0]}, {bad[1]})")
    loops = pairs[:, 0] == pairs[:, 1]
    if loops.any():
        u = int(pairs[loops][0, 0])
        raise GraphError(f"self-loop ({u}, {u}) is not allowed")

    node_ids = np.unique(pairs)
    u = np.searchsorted(node_ids, pairs[:, 0])
    v = np.searchsorted(node_ids, pairs[:, 1])
    und = np.unique(np.stack([np.minimum(u, v), np.maximum(u, v)], axis=1), axis=0)

    src = np.concatenate([und[:, 0], und[:, 1]])
    dst = np.concatenate([und[:, 1], und[:, 0]])
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=len(node_ids))
    indptr = np.zeros(len(node_ids) + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(
        node_ids=node_ids,
        indptr=indptr,
        indices=dst[order],
        edge_count=len(und),
    )


def _extract(g: Graph, members: np.ndarray) -> Graph:
    """Induced subgraph on sorted internal indices `members`."""
    mask = np.zeros(g.n_nodes, dtype=bool)
    mask[members] = True
    lens = g.indptr[members + 1] - g.indptr[members]
    nbrs = _gather_rows(g.indptr, g.indices, members)
    keep = mask[nbrs]
    row_of = np.repeat(np.arange(len(members), dtype=np.int64), lens)[keep]
    cols = np.searchsorted(members, nbrs[keep])
    counts = np.bincount(row_of, minlength=len(members))
    indptr = np.zeros(len(members) + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(
        node_ids=g.node_ids[members].copy(),
        indptr=indptr,
        indices=cols.astype(np.int64),
        edge_count=len(cols) // 2,
    )


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """Induced subgraph on the given external node ids."""
    members = np.unique(np.fromiter((g.index_of(v) for v in nodes), dtype=np.int64))
    if members.size == 0:
        raise GraphError("cannot induce a subgraph on an empty node set")
    return _extract(g, members)


def h_neighborhood(g: Graph, v: int, h: int) -> Subgraph:
    """Induced subgraph on all nodes within h hops of v, v included."""
    if h < 1:
        raise GraphError(f"hop radius must be >= 1, got {h}")
    iv = g.index_of(v)
    members = g.ball(iv, h)
    return Subgraph(
        graph=_extract(g, members),
        parent_map=members,
        center=int(np.searchsorted(members, iv)),
    )


def connected_components(g: Graph) -> ComponentSet:
    """All connected components, sorted by descending size (ties: lowest id)."""
    unseen = np.ones(g.n_nodes, dtype=bool)
    comps = []
    for seed in range(g.n_nodes):
        if not unseen[seed]:
            continue
        members = g.ball(seed, g.n_nodes)
        unseen[members] = False
        comps.append(frozenset(int(x) for x in g.node_ids[members]))
    comps.sort(key=lambda c: (-len(c), min(c)))
    return ComponentSet(components=tuple(comps))


def is_connected(g: Graph) -> bool:
    return len(g.ball(0, g.n_nodes)) == g.n_nodes


def remove_node(g: Graph, v: int) -> Graph:
    """Copy of g without v and its incident edges; other ids are preserved."""
    iv = g.index_of(v)
    keep = np.delete(np.arange(g.n_nodes, dtype=np.int64), iv)
    return _extract(g, keep)


def remove_nodes(g: Graph, nodes: Iterable[int]) -> Graph:
    """Copy of g without all of `nodes` and their incident edges."""
    drop = {g.index_of(v) for v in nodes}
    keep = np.array(sorted(set(range(g.n_nodes)) - drop), dtype=np.int64)
    if keep.size == 0:
        raise GraphError("removal would leave an empty graph")
    return _extract(g, keep)


def read_edge_list(path: str | Path) -> Graph:
    """Parse the edge-list format: one `u v` pair per line, `#` comments and
    blank lines ignored. Errors carry the offending line number."""
    path = Path(path)
    edges: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise GraphError(
                    f"{path}:{lineno}: expected two whitespace-separated integers, got {stripped!r}"
                )
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphError(f"{path}:{lineno}: not an integer pair: {stripped!r}") from None
            if u < 0 or v < 0:
                raise GraphError(f"{path}:{lineno}: node ids must be non-negative")
            if u == v:
                raise GraphError(f"{path}:{lineno}: self-loop ({u}, {u}) is not allowed")
            edges.append((u, v))
    if not edges:
        raise GraphError(f"{path}: no edges found")
    return build_graph(edges)


def write_edge_list(g: Graph, path: str | Path) -> None:
    """Write g in the edge-list format, one `u v` line per edge with u < v."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def degree_sequence(g: Graph) -> Sequence[int]:
    """Degrees aligned with g.node_ids order."""
    return [int(d) for d in g.degrees]
