"""Synchronous message-passing simulation of the criticality protocol.

Demonstrates that the scoring needs only local knowledge: nodes start with
their incident edges, flood topology h hops, compute kappa from the learned
neighborhood, flood kappa values h hops, and route one indication each to
their lowest-kappa member. The resulting report must match the centralized
computation exactly.

Nodes run as state machines in lock-step rounds; within a round every node
reads only the previous round's inbox, so per-round execution order cannot
change the outcome.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .criticality import CriticalityReport, NodeAssessment, round_significant
from .graph import DisconnectedGraphError, Graph, GraphError, build_graph, is_connected
from .spectral import DEFAULT_DENSE_THRESHOLD, spectral_gap

Edge = tuple[int, int]


class MessageKind(enum.Enum):
    TOPOLOGY = "topology"
    KAPPA = "kappa"
    INDICATION = "indication"


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    sender: int
    receiver: int
    payload: object


@dataclass
class NodeState:
    """Everything one node knows; messages only ever add to it."""

    id: int
    neighbors: tuple[int, ...]
    known_edges: set[Edge] = field(default_factory=set)
    edge_hops: dict[Edge, int] = field(default_factory=dict)
    round: int = 0
    kappa: float = math.nan
    peer_kappas: dict[int, float] = field(default_factory=dict)
    pointer: int = -1
    indications_received: int = 0
    score: float = 0.0
    ball_members: tuple[int, ...] = ()
    bfs_parent: dict[int, int | None] = field(default_factory=dict)


class ProtocolStats(NamedTuple):
    rounds: int
    total_messages: int
    max_node_state_nodes: int


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class _Simulation:
    def __init__(self, g: Graph, h: int, dense_threshold: int, trace_path=None):
        if h < 1:
            raise GraphError(f"hop radius must be >= 1, got {h}")
        if g.n_nodes < 2:
            raise GraphError(f"need at least 2 nodes, got {g.n_nodes}")
        if not is_connected(g):
            raise DisconnectedGraphError("protocol requires a connected graph")
        self.h = h
        self.dense_threshold = dense_threshold
        self.ids = [int(x) for x in g.node_ids]
        self.states = {
            v: NodeState(id=v, neighbors=tuple(int(u) for u in g.neighbors(v)))
            for v in self.ids
        }
        self.rounds = 0
        self.total_messages = 0
        self._trace = open(trace_path, "w", encoding="utf-8") if trace_path else None

    def close(self) -> None:
        if self._trace:
            self._trace.close()
            self._trace = None

    def _deliver(self, messages: list[Message]) -> dict[int, list[Message]]:
        inboxes: dict[int, list[Message]] = {v: [] for v in self.ids}
        for msg in messages:
            inboxes[msg.receiver].append(msg)
            self.total_messages += 1
            if self._trace:
                self._trace.write(
                    f"{self.rounds},{msg.kind.value},{msg.sender},{msg.receiver}\n"
                )
        return inboxes

    def _begin_round(self) -> None:
        self.rounds += 1
        for st in self.states.values():
            st.round = self.rounds

    def flood_topology(self) -> None:
        """Phase 1: h+1 rounds of edge-set flooding with a hop cap of h.

        An edge first reaches a node in as many rounds as its distance to
        the nearer endpoint, so round h+1 is provably quiet; running it
        asserts closure.
        """
        fresh: dict[int, set[Edge]] = {}
        for v, st in self.states.items():
            own = {_canon(v, u) for u in st.neighbors}
            st.known_edges |= own
            st.edge_hops.update({e: 0 for e in own})
            fresh[v] = set(own)
        for r in range(self.h + 1):
            self._begin_round()
            outgoing: list[Message] = []
            for v in self.ids:
                st = self.states[v]
                payload = {(e, st.edge_hops[e]) for e in fresh[v] if st.edge_hops[e] < self.h}
                if not payload:
                    continue
                for u in st.neighbors:
                    outgoing.append(Message(MessageKind.TOPOLOGY, v, u, frozenset(payload)))
            inboxes = self._deliver(outgoing)
            next_fresh: dict[int, set[Edge]] = {v: set() for v in self.ids}
            for v in self.ids:
                st = self.states[v]
                for msg in inboxes[v]:
                    for edge, hop in msg.payload:
                        if edge in st.known_edges:
                            continue
                        st.known_edges.add(edge)
                        st.edge_hops[edge] = hop + 1
                        next_fresh[v].add(edge)
            if r == self.h and any(next_fresh.values()):
                raise AssertionError("topology flood not closed after h+1 rounds")
            fresh = next_fresh

    def build_neighborhoods(self) -> None:
        """Each node derives its h-ball and kappa from learned topology only."""
        for v in self.ids:
            st = self.states[v]
            adjacency: dict[int, list[int]] = {}
            for a, b in st.known_edges:
                adjacency.setdefault(a, []).append(b)
                adjacency.setdefault(b, []).append(a)
            for lst in adjacency.values():
                lst.sort()
            dist = {v: 0}
            parent: dict[int, int | None] = {v: None}
            frontier = [v]
            depth = 0
            while frontier and depth < self.h:
                nxt = []
                for u in frontier:
                    for w in adjacency.get(u, ()):
                        if w not in dist:
                            dist[w] = depth + 1
                            parent[w] = u
                            nxt.append(w)
                frontier = sorted(nxt)
                depth += 1
            members = tuple(sorted(dist))
            member_set = set(members)
            st.ball_members = members
            st.bfs_parent = parent
            ball_edges = [e for e in st.known_edges if e[0] in member_set and e[1] in member_set]
            degree = len(st.neighbors)
            if degree == 1:
                st.kappa = math.inf
            else:
                ball = build_graph(ball_edges)
                st.kappa = spectral_gap(
                    ball, dense_threshold=self.dense_threshold
                ).lambda2 / math.log2(degree)
            st.peer_kappas[v] = st.kappa

    def flood_kappas(self) -> None:
        """Phase 2: h rounds flooding (id, kappa) with the same hop cap."""
        hops: dict[int, dict[int, int]] = {v: {v: 0} for v in self.ids}
        fresh: dict[int, set[int]] = {v: {v} for v in self.ids}
        for _ in range(self.h):
            self._begin_round()
            outgoing: list[Message] = []
            for v in self.ids:
                st = self.states[v]
                payload = {
                    (origin, st.peer_kappas[origin], hops[v][origin])
                    for origin in fresh[v]
                    if hops[v][origin] < self.h
                }
                if not payload:
                    continue
                for u in st.neighbors:
                    outgoing.append(Message(MessageKind.KAPPA, v, u, frozenset(payload)))
            inboxes = self._deliver(outgoing)
            next_fresh: dict[int, set[int]] = {v: set() for v in self.ids}
            for v in self.ids:
                st = self.states[v]
                for msg in inboxes[v]:
                    for origin, kap, hop in msg.payload:
                        if origin in st.peer_kappas:
                            continue
                        st.peer_kappas[origin] = kap
                        hops[v][origin] = hop + 1
                        next_fresh[v].add(origin)
            fresh = next_fresh
        for v in self.ids:
            st = self.states[v]
            if set(st.peer_kappas) != set(st.ball_members):
                raise AssertionError(
                    f"node {v} learned kappas {sorted(st.peer_kappas)} "
                    f"but its ball is {st.ball_members}"
                )

    def route_indications(self) -> None:
        """Phase 3: each node sends one indication to its lowest-kappa member,
        source-routed along its own BFS tree (every hop stays in the ball)."""
        in_flight: list[tuple[tuple[int, ...], int]] = []
        for v in self.ids:
            st = self.states[v]
            target = min(
                st.ball_members,
                key=lambda u: (round_significant(st.peer_kappas[u]), u),
            )
            st.pointer = target
            if target == v:
                st.indications_received += 1
                continue
            hops_back = [target]
            while hops_back[-1] != v:
                hops_back.append(st.bfs_parent[hops_back[-1]])
            route = tuple(reversed(hops_back))
            in_flight.append((route, 0))
        while in_flight:
            self._begin_round()
            outgoing = [
                Message(MessageKind.INDICATION, route[pos], route[pos + 1], route)
                for route, pos in in_flight
            ]
            self._deliver(outgoing)
            advanced = []
            for route, pos in in_flight:
                if pos + 2 == len(route):
                    self.states[route[-1]].indications_received += 1
                else:
                    advanced.append((route, pos + 1))
            in_flight = advanced

    def finish(self) -> tuple[CriticalityReport, ProtocolStats]:
        assessments: dict[int, NodeAssessment] = {}
        critical: set[int] = set()
        for v in self.ids:
            st = self.states[v]
            size = len(st.ball_members)
            st.score = st.indications_received / size
            assessments[v] = NodeAssessment(
                node=v,
                degree=len(st.neighbors),
                kappa=st.kappa,
                neighborhood_size=size,
                lowest_k_pointer=st.pointer,
                indications=st.indications_received,
                score=st.score,
            )
            if st.indications_received == size:
                critical.add(v)
        report = CriticalityReport(
            h=self.h, assessments=assessments, critical_nodes=frozenset(critical)
        )
        stats = ProtocolStats(
            rounds=self.rounds,
            total_messages=self.total_messages,
            max_node_state_nodes=max(len(st.ball_members) for st in self.states.values()),
        )
        return report, stats


def _run(
    g: Graph, h: int, dense_threshold: int, trace_path
) -> tuple[CriticalityReport, ProtocolStats, dict[int, NodeState]]:
    sim = _Simulation(g, h, dense_threshold, trace_path)
    try:
        sim.flood_topology()
        sim.build_neighborhoods()
        sim.flood_kappas()
        sim.route_indications()
        report, stats = sim.finish()
    finally:
        sim.close()
    return report, stats, sim.states


def run_protocol(
    g: Graph,
    h: int,
    *,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    trace_path: str | Path | None = None,
) -> CriticalityReport:
    """Run the full distributed protocol and return its criticality report."""
    report, _, _ = _run(g, h, dense_threshold, trace_path)
    return report


def simulate(
    g: Graph,
    h: int,
    *,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    trace_path: str | Path | None = None,
) -> tuple[CriticalityReport, ProtocolStats]:
    """run_protocol plus the message accounting, from a single run."""
    report, stats, _ = _run(g, h, dense_threshold, trace_path)
    return report, stats


def message_stats(
    g: Graph, h: int, *, dense_threshold: int = DEFAULT_DENSE_THRESHOLD
) -> ProtocolStats:
    """Rounds used, messages delivered, and the largest per-node ball stored."""
    _, stats, _ = _run(g, h, dense_threshold, None)
    return stats
