import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from aggroute.errors import ParseError, ValidationError
from aggroute.topology import (Arc, Topology, format_topology, hop_distances, parse_topology,
                               shortest_path)

from conftest import TABLE1, TABLE2


def test_parse_path_graph():
    t = parse_topology("1 2\n2 3")
    assert t.nodes == (1, 2, 3)
    assert len(t.arcs) == 4
    assert Arc(2, 1) in t.arcs


def test_parse_comments_blanks_and_duplicates():
    t = parse_topology("# header\n\n1 2\n2 1\n  1   2  \n2 3\n")
    assert len(t.arcs) == 4


def test_self_loop_rejected():
    with pytest.raises(ValidationError, match="self-loop"):
        parse_topology("1 1")


@pytest.mark.parametrize("text, lineno", [("1 2\n2 x", 2), ("1 2 3", 1), ("# c\n\n0 1", 3), ("5", 1)])
def test_malformed_line_reports_line_number(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_topology(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_disconnected_names_unreachable_pair():
    with pytest.raises(ValidationError, match="node 3 unreachable from node 1"):
        parse_topology("1 2\n3 4")


def test_cost239_shape(cost):
    assert cost.nodes == tuple(range(1, 12))
    assert len(cost.links) == 26
    assert len(cost.arcs) == 52


def test_cost239_contains_every_table_route(cost):
    links = set(cost.links)
    routes = [row[2] for row in TABLE1] + list(TABLE2.values())
    for route in routes:
        for u, v in zip(route, route[1:]):
            assert (min(u, v), max(u, v)) in links, route


def test_cost239_table2_routes_are_shortest(cost):
    dm = hop_distances(cost)
    for (s, t), route in TABLE2.items():
        assert dm[s, t] == len(route) - 1


def test_path_graph_distance(path3):
    assert hop_distances(path3)[1, 3] == 2


@pytest.mark.parametrize("u, v, d", [(7, 2, 2), (9, 11, 1), (9, 2, 2), (9, 4, 2)])
def test_cost239_distances(cost, u, v, d):
    assert hop_distances(cost)[u, v] == d


def test_shortest_path_trivial(cost):
    assert shortest_path(cost, 1, 1) == [1]


@pytest.mark.parametrize("u, v, route", [(7, 1, [7, 1]), (9, 3, [9, 8, 3])])
def test_shortest_path_cost239(cost, u, v, route):
    assert shortest_path(cost, u, v) == route


def test_shortest_path_tie_break_smallest_next_node():
    # square 1-2-4, 1-3-4: both two hops, via 2 wins
    t = parse_topology("1 3\n3 4\n1 2\n2 4")
    assert shortest_path(t, 1, 4) == [1, 2, 4]
    assert shortest_path(t, 4, 1) == [4, 2, 1]


def test_shortest_path_matches_table2_up_to_ties(cost):
    matches = sum(shortest_path(cost, s, t) == list(r) for (s, t), r in TABLE2.items())
    # 7->11 prefers 7-6-11 and 9->1 prefers 9-6-1 over the equal-length table routes
    assert matches == 8


def random_connected(seed, n_max=9):
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    nodes = rng.sample(range(1, 40), n)  # non-contiguous labels
    links = [(nodes[k], nodes[rng.randrange(k)]) for k in range(1, n)]
    links += [(u, v) for u, v in itertools.combinations(nodes, 2) if rng.random() < 0.25]
    return Topology.from_links(links, nodes=nodes)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_distances_agree_with_paths_and_networkx(seed):
    t = random_connected(seed)
    dm = hop_distances(t)
    g = nx.Graph(t.links)
    g.add_nodes_from(t.nodes)
    ref = dict(nx.all_pairs_shortest_path_length(g))
    for u in t.nodes:
        for v in t.nodes:
            path = shortest_path(t, u, v)
            assert len(path) - 1 == dm[u, v] == ref[u][v]
            assert path[0] == u and path[-1] == v
            assert all(Arc(a, b) in t.arcs for a, b in zip(path, path[1:]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_distance_metric_properties(seed):
    t = random_connected(seed)
    dm = hop_distances(t)
    for u in t.nodes:
        assert dm[u, u] == 0
        for v in t.nodes:
            assert dm[u, v] == dm[v, u]
            for w in t.nodes:
                assert dm[u, w] <= dm[u, v] + dm[v, w]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_format_parse_roundtrip(seed):
    t = random_connected(seed)
    if len(t.nodes) < 2:
        return
    again = parse_topology(format_topology(t))
    assert again.arcs == t.arcs
    assert parse_topology(format_topology(again)).arcs == t.arcs


def test_arc_count_even_and_symmetric(cost):
    assert len(cost.arcs) % 2 == 0
    assert all(a.reversed() in cost.arcs for a in cost.arcs)
