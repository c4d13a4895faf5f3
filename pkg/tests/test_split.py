import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from oracles import adjacency_sets, brute_max_clique, brute_split, random_graph
from splitham.errors import InvariantViolation, PreconditionViolated
from splitham.generate import GenSpec, gen_family_complete_split, gen_random_split
from splitham.graph import Graph
from splitham.graph6 import parse_graph6
from splitham.harness import check_hypotheses
from splitham.split import (
    SplitPartition,
    assert_connectivity_clique_bound,
    check_partition,
    split_partition,
)
from test_graph import graphs


def test_cycle_is_not_split():
    assert split_partition(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])) is None


def test_triangle():
    assert split_partition(Graph.complete(3)) == SplitPartition((0, 1, 2), ())


def test_claw_tie_break():
    p = split_partition(parse_graph6("Cs"))
    assert p == SplitPartition((0, 1), (2, 3))


def test_fully_joined_vertex_enlarges_the_clique():
    # an I-vertex adjacent to all of K_s extends it to a clique of size s+1
    p = split_partition(gen_family_complete_split(10, 3))
    assert p.S == tuple(range(11)) and p.I == (11, 12)


def test_clique_bound_example():
    g = gen_family_complete_split(4, 3)
    p = split_partition(g)
    assert assert_connectivity_clique_bound(g, p, 3)
    assert len(p.S) == 5 and len(p.S) >= 4


def test_clique_bound_preconditions():
    with pytest.raises(PreconditionViolated):
        assert_connectivity_clique_bound(Graph.complete(5), split_partition(Graph.complete(5)), 3)
    claw = parse_graph6("Cs")
    with pytest.raises(PreconditionViolated):
        assert_connectivity_clique_bound(claw, split_partition(claw), 3)
    # a non-maximum clique side on K4 is a valid partition but breaks s >= k+1
    with pytest.raises(InvariantViolation):
        assert_connectivity_clique_bound(Graph.complete(4), SplitPartition((0, 1, 2), (3,)), 3)


def test_check_partition_reports_problems():
    g = gen_family_complete_split(5, 1)
    assert check_partition(g, split_partition(g)) == []
    assert check_partition(g, SplitPartition((0, 1, 2), (3, 4, 5)))
    assert check_partition(g, SplitPartition((0, 1), (2,)))


def test_recognition_and_maximality_against_brute_force():
    rng = random.Random(21)
    split_seen = 0
    for _ in range(400):
        n = rng.randint(1, 9)
        if rng.random() < 0.6:
            # plant a split graph so both outcomes are well represented
            s = rng.randint(1, n)
            edges = [(u, v) for u, v in combinations(range(s), 2)]
            edges += [(u, b) for b in range(s, n) for u in range(s) if rng.random() < 0.5]
            perm = list(range(n))
            rng.shuffle(perm)
            edges = [(perm[u], perm[v]) for u, v in edges]
        else:
            edges = random_graph(rng, n, 0.5)
        g = Graph(n, edges)
        adj = adjacency_sets(n, edges)
        p = split_partition(g)
        assert (p is not None) == brute_split(adj)
        if p is not None:
            split_seen += 1
            assert check_partition(g, p) == []
            assert len(p.S) == brute_max_clique(adj)
            assert split_partition(g) == p
    assert split_seen > 150


def test_lexicographic_choice_among_maximum_cliques():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 8)
        s = rng.randint(1, n)
        edges = [(u, v) for u, v in combinations(range(s), 2)]
        edges += [(u, b) for b in range(s, n) for u in range(s) if rng.random() < 0.7]
        g = Graph(n, edges)
        p = split_partition(g)
        adj = adjacency_sets(n, edges)
        size = len(p.S)
        best = None
        for cand in combinations(range(n), size):
            rest = [v for v in range(n) if v not in cand]
            if all(b in adj[a] for a, b in combinations(cand, 2)) and not any(
                b in adj[a] for a, b in combinations(rest, 2)
            ):
                best = cand
                break
        assert p.S == best


@settings(max_examples=100)
@given(graphs(max_n=8))
def test_partition_invariants(g):
    p = split_partition(g)
    if p is None:
        return
    assert sorted(p.S + p.I) == list(range(g.order))
    for b in p.I:
        assert set(g.neighbors(b)) <= set(p.S)


def test_clique_bound_on_random_qualifying():
    spec = GenSpec(n_range=(9, 14), i_range=(1, 4), p_range=(0.5, 1.0), seed=17, count=300)
    checked = 0
    for g in gen_random_split(spec):
        hyp, p = check_hypotheses(g, 3, 0)
        if all(hyp.values()) and p.I:
            assert assert_connectivity_clique_bound(g, p, 3)
            checked += 1
    assert checked > 30
