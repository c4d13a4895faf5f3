import random

import pytest

from oracles import adjacency_sets, assignments, components
from splitham.cover import (
    AlternatingCycle,
    AlternatingPath,
    ICover,
    PseudoICover,
    check_icover,
    check_pseudo_icover,
    cover_stats,
)
from splitham.errors import ExistenceFailure, IllegalSurgery, SearchBudgetExceeded
from splitham.generate import split_graph_from_rows
from splitham.search import find_assignment
from splitham.split import SplitPartition
from splitham.surgery import (
    bound_lengths,
    build_icover,
    build_pseudo_icover,
    enabled_openings,
    min_cycle_pseudo_icover,
    open_cycle_with_outside_vertex,
)


def explicit(s, rows):
    return split_graph_from_rows(s, rows), SplitPartition(tuple(range(s)), tuple(range(s, s + len(rows))))


def random_small(rng, s_range=(2, 6), k_range=(1, 4), p=0.6):
    s = rng.randint(*s_range)
    k = rng.randint(*k_range)
    rows = [sum(1 << v for v in range(s) if rng.random() < p) for _ in range(k)]
    return explicit(s, rows)


def test_pseudo_cover_chain_fixture():
    g, p = explicit(5, [0b11111] * 3)
    q = build_pseudo_icover(g, p)
    assert [x.sequence for x in q.paths] == [(0, 5, 1, 6, 2, 7, 3)]
    assert q.cycles == ()


def test_forced_two_cycle():
    # b0, b1 both see only s0, s1; extra clique vertices s2, s3
    g, p = explicit(4, [0b0011, 0b0011])
    q = build_pseudo_icover(g, p)
    assert [c.sequence for c in q.cycles] == [(0, 4, 1, 5)]
    adj = adjacency_sets(g.order, g.edges())
    for assign in assignments(adj, p.S, p.I):
        assert any(v == e for v, e in components(assign))


def test_empty_independent_side():
    g, p = explicit(4, [])
    assert build_pseudo_icover(g, p) == PseudoICover()
    assert build_icover(g, p) == ICover()


def test_open_cycle_into_outside_vertex():
    # s0, s1, y = 0, 1, 2; b0 = 3 sees y, b1 = 4 does not
    g, p = explicit(3, [0b111, 0b011])
    q = PseudoICover((), (AlternatingCycle((0, 3, 1, 4)),))
    check_pseudo_icover(g, p, q)
    assert enabled_openings(g, p, q) == [(0, 3, 2)]
    out = open_cycle_with_outside_vertex(g, p, q, 0, 3, 2)
    # y b0 s1 b1 s0, oriented from the smaller end
    assert [x.sequence for x in out.paths] == [(0, 4, 1, 3, 2)]
    assert out.cycles == ()


def test_open_cycle_into_path_end():
    # s0, s1, y, s2 = 0..3; b0 = 4 sees y, b1 = 5, b2 = 6 on path y b2 s2
    g, p = explicit(4, [0b0111, 0b0011, 0b1100])
    q = PseudoICover((AlternatingPath((2, 6, 3)),), (AlternatingCycle((0, 4, 1, 5)),))
    check_pseudo_icover(g, p, q)
    out = open_cycle_with_outside_vertex(g, p, q, 0, 4, 2)
    # s2 b2 y b0 s1 b1 s0, oriented from the smaller end
    assert [x.sequence for x in out.paths] == [(0, 5, 1, 4, 2, 6, 3)]
    assert set(out.paths[0].sequence) == {0, 1, 2, 3, 4, 5, 6}
    assert cover_stats(out)["h2"] == cover_stats(q)["h2"] - 1


@pytest.mark.parametrize(
    "args",
    [
        (0, 4, 0),  # y on the cycle
        (0, 0, 2),  # x is not an I-vertex of the cycle
        (0, 5, 2),  # b1 y is not an edge
        (1, 4, 2),  # no such cycle
        (0, 4, 6),  # y not in S
    ],
)
def test_illegal_openings(args):
    g, p = explicit(4, [0b0111, 0b0011, 0b1100])
    q = PseudoICover((AlternatingPath((2, 6, 3)),), (AlternatingCycle((0, 4, 1, 5)),))
    with pytest.raises(IllegalSurgery):
        open_cycle_with_outside_vertex(g, p, q, *args)


def test_opening_rejects_interior_target():
    # y = 1 is interior to the path 0 b 1 b 2
    g, p = explicit(5, [0b00111, 0b00111, 0b11010, 0b11000])
    q = PseudoICover((AlternatingPath((0, 5, 1, 6, 2)),), (AlternatingCycle((3, 7, 4, 8)),))
    check_pseudo_icover(g, p, q)
    with pytest.raises(IllegalSurgery):
        open_cycle_with_outside_vertex(g, p, q, 0, 7, 1)


def test_icover_for_complete_split_fixture():
    g, p = explicit(10, [(1 << 10) - 1] * 3)
    c = build_icover(g, p)
    assert [x.length for x in c.paths] == [6]
    check_icover(g, p, c)


def test_bound_lengths_unchanged_at_six():
    g, p = explicit(10, [(1 << 10) - 1] * 3)
    c = build_icover(g, p)
    assert bound_lengths(g, p, c) is c


def test_bound_lengths_splits_at_outside_neighbour():
    # path s0 b0 s1 b1 s2 b2 s3 b3 s4 of length 8; b1 also sees s5 outside it
    rows = [0b000011, 0b100110, 0b001100, 0b011000]
    g, p = explicit(6, rows)
    long = ICover((AlternatingPath((0, 6, 1, 7, 2, 8, 3, 9, 4)),))
    check_icover(g, p, long)
    out = bound_lengths(g, p, long)
    assert sorted(x.length for x in out.paths) == [4, 4]
    assert [x.sequence for x in out.paths] == [(0, 6, 1, 7, 5), (2, 8, 3, 9, 4)]


def test_constructors_agree_with_brute_force():
    rng = random.Random(12)
    stats = {"icover": 0, "none": 0, "bounded": 0}
    for _ in range(400):
        g, p = random_small(rng)
        adj = adjacency_sets(g.order, g.edges())
        sols = list(assignments(adj, p.S, p.I))
        acyclic = [a for a in sols if all(v == e + 1 for v, e in components(a))]
        bounded = [a for a in acyclic if all(e <= 3 for _, e in components(a))]
        if not sols:
            with pytest.raises(ExistenceFailure):
                build_pseudo_icover(g, p)
            continue
        q = min_cycle_pseudo_icover(g, p)
        check_pseudo_icover(g, p, q)
        fewest = min(sum(1 for v, e in components(a) if v == e) for a in sols)
        assert len(q.cycles) == fewest
        if not acyclic:
            stats["none"] += 1
            with pytest.raises(ExistenceFailure):
                build_icover(g, p)
            continue
        stats["icover"] += 1
        c = build_icover(g, p)
        check_icover(g, p, c)
        if bounded:
            stats["bounded"] += 1
            out = bound_lengths(g, p, c)
            check_icover(g, p, out)
            assert all(x.length <= 6 for x in out.paths)
        else:
            with pytest.raises(ExistenceFailure):
                bound_lengths(g, p, c)
    assert min(stats.values()) > 5, stats


def test_search_respects_caps_and_forbidden_ends():
    rng = random.Random(31)
    for _ in range(300):
        g, p = random_small(rng, s_range=(3, 6), k_range=(1, 3))
        adj = adjacency_sets(g.order, g.edges())
        u, v = rng.sample(p.S, 2)
        found = find_assignment(g, p, acyclic=True, caps={u: 1, v: 1}, forbid_ends=(u, v))

        def ok(a):
            deg = {}
            for x, y in a.values():
                deg[x] = deg.get(x, 0) + 1
                deg[y] = deg.get(y, 0) + 1
            if deg.get(u, 0) > 1 or deg.get(v, 0) > 1:
                return False
            if not all(n == e + 1 for n, e in components(a)):
                return False
            # u and v may not be the two ends of one path
            graph = {}
            for x, y in a.values():
                graph.setdefault(x, set()).add(y)
                graph.setdefault(y, set()).add(x)
            if u in graph and v in graph:
                seen, stack = {u}, [u]
                while stack:
                    x = stack.pop()
                    for y in graph[x] - seen:
                        seen.add(y)
                        stack.append(y)
                if v in seen:
                    return False
            return True

        expected = any(ok(a) for a in assignments(adj, p.S, p.I))
        assert (found is not None) == expected
        if found is not None:
            assert ok(found)


def test_node_cap_raises():
    # five disjoint pairs cannot fit in eight clique vertices, but it takes branching to see it
    g, p = explicit(8, [0b11111111] * 5)
    with pytest.raises(SearchBudgetExceeded):
        find_assignment(g, p, acyclic=True, max_path_edges=1, node_cap=50)
    assert find_assignment(g, p, acyclic=True, max_path_edges=1) is None
