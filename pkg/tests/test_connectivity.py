import random

import pytest
from hypothesis import given, settings

from oracles import adjacency_sets, brute_k_connected, random_graph
from splitham.connectivity import (
    is_connected,
    is_k_connected,
    local_vertex_connectivity,
    vertex_connectivity,
)
from splitham.generate import gen_family_complete_split
from splitham.graph import Graph
from splitham.graph6 import parse_graph6
from test_graph import graphs


def test_small_conventions():
    assert is_connected(Graph(0))
    assert is_connected(Graph(1))
    assert is_connected(Graph.complete(3))
    assert not is_connected(Graph(4, [(0, 1), (2, 3)]))


def test_named_examples():
    assert is_k_connected(Graph.complete(4), 3)
    assert not is_k_connected(parse_graph6("Cs"), 2)  # K_{1,3}
    g = gen_family_complete_split(10, 3)
    assert is_k_connected(g, 3)
    assert brute_k_connected(adjacency_sets(g.order, g.edges()), 3)


def test_complete_graph_convention():
    assert is_k_connected(Graph.complete(5), 4)
    assert not is_k_connected(Graph.complete(5), 5)
    assert vertex_connectivity(Graph.complete(5)) == 4


def test_local_connectivity_requires_nonadjacent():
    with pytest.raises(ValueError):
        local_vertex_connectivity(Graph.complete(3), 0, 1)
    cycle = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert local_vertex_connectivity(cycle, 0, 3) == 2


@pytest.mark.parametrize("method", ["cuts", "flow", "auto"])
def test_agrees_with_brute_force(method):
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(2, 10)
        edges = random_graph(rng, n, rng.uniform(0.3, 0.9))
        g = Graph(n, edges)
        adj = adjacency_sets(n, edges)
        for k in (1, 2, 3, 4):
            assert is_k_connected(g, k, method=method) == brute_k_connected(adj, k), (n, edges, k)


@settings(max_examples=150)
@given(graphs(max_n=9))
def test_monotone_in_k(g):
    kappa = vertex_connectivity(g)
    for k in range(1, 6):
        assert is_k_connected(g, k) == (k <= kappa)
