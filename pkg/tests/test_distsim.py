import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critnet import (
    DisconnectedGraphError,
    GraphError,
    build_graph,
    message_stats,
    run_indication_round,
    run_protocol,
)
from critnet.distsim import MessageKind, _run, simulate

import oracles
from conftest import random_connected_edges


def assert_reports_match(central, distributed):
    assert central.h == distributed.h
    assert set(central.assessments) == set(distributed.assessments)
    for v, a in central.assessments.items():
        b = distributed.assessments[v]
        if math.isinf(a.kappa):
            assert math.isinf(b.kappa)
        else:
            assert b.kappa == a.kappa  # same subgraph, same solver: bit-equal
        assert b.lowest_k_pointer == a.lowest_k_pointer
        assert b.indications == a.indications
        assert b.neighborhood_size == a.neighborhood_size
        assert b.score == a.score
    assert distributed.critical_nodes == central.critical_nodes


def test_protocol_matches_centralized_barbell(barbell):
    for h in (1, 2, 3):
        assert_reports_match(run_indication_round(barbell, h), run_protocol(barbell, h))


def test_protocol_star(star4):
    rep = run_protocol(star4, 1)
    assert rep.critical_nodes == frozenset({0})
    assert rep.assessments[0].score == 1.0


def test_protocol_two_nodes():
    g = build_graph([(3, 7)])
    rep = run_protocol(g, 2)
    assert rep.critical_nodes == frozenset({3})
    assert rep.assessments[3].kappa == math.inf


@given(st.integers(0, 2**32 - 1), st.integers(4, 40), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_protocol_matches_centralized_random(seed, n, h):
    g = build_graph(random_connected_edges(seed, n, extra=0.5))
    assert_reports_match(run_indication_round(g, h), run_protocol(g, h))


def test_round_budget(barbell):
    for h in (1, 2, 4):
        stats = message_stats(barbell, h)
        assert stats.rounds <= 3 * h + 1
        assert stats.max_node_state_nodes == 11  # diameter 2: every ball saturates
        assert stats.total_messages > 0


def test_stats_deterministic(barbell):
    assert message_stats(barbell, 2) == message_stats(barbell, 2)


def test_max_state_matches_largest_ball():
    edges = random_connected_edges(23, 50)
    g = build_graph(edges)
    adj = oracles.edges_to_adj(edges)
    stats = message_stats(g, 2)
    biggest = max(len(oracles.ball_members(adj, v, 2)) for v in adj)
    assert stats.max_node_state_nodes == biggest


def test_node_state_locality_and_flood_closure():
    edges = random_connected_edges(31, 45)
    g = build_graph(edges)
    adj = oracles.edges_to_adj(edges)
    h = 2
    _, _, states = _run(g, h, dense_threshold=2048, trace_path=None)
    for v, st_ in states.items():
        dist = oracles.bfs_distances(adj, v)
        # every learned edge touches the h-ball, and hop counts are true distances
        for (a, b), hop in st_.edge_hops.items():
            assert min(dist[a], dist[b]) <= h
            assert hop == min(dist[a], dist[b])
        # kappa knowledge is exactly the ball, no more and no less
        assert sorted(st_.peer_kappas) == oracles.ball_members(adj, v, h)
        assert sorted(st_.ball_members) == oracles.ball_members(adj, v, h)


def test_trace_log_lines_match_message_count(tmp_path, barbell):
    trace = tmp_path / "msgs.log"
    _, stats = simulate(barbell, 2, trace_path=trace)
    lines = trace.read_text().strip().splitlines()
    assert len(lines) == stats.total_messages
    kinds = {line.split(",")[1] for line in lines}
    assert kinds <= {k.value for k in MessageKind}
    rounds = [int(line.split(",")[0]) for line in lines]
    assert rounds == sorted(rounds)
    assert max(rounds) <= stats.rounds


def test_protocol_rejects_bad_inputs(two_triangles, path3):
    with pytest.raises(DisconnectedGraphError):
        run_protocol(two_triangles, 2)
    with pytest.raises(GraphError, match=">= 1"):
        run_protocol(path3, 0)


def test_stats_tiny_graphs():
    assert message_stats(build_graph([(0, 1)]), 1).max_node_state_nodes == 2
    p5 = build_graph([(i, i + 1) for i in range(4)])
    assert message_stats(p5, 1).max_node_state_nodes == 3  # the middle node
    p7 = build_graph([(i, i + 1) for i in range(6)])
    assert_reports_match(run_indication_round(p7, 2), run_protocol(p7, 2))
