"""Constructing pseudo I-covers and I-covers, and the cover surgeries.

Pipeline: a pseudo I-cover from backtracking, cycles opened at outside
neighbours while such a move exists, exhaustive acyclic search if cycles
survive; path lengths are then pushed to at most 6 by local search over
single-vertex reassignments with an exhaustive fallback.
"""

from __future__ import annotations

import logging

from .cover import (
    Assignment,
    ICover,
    PseudoICover,
    assignment_to_cover,
    assignment_to_icover,
    check_icover,
    check_pseudo_icover,
    cover_to_assignment,
    is_linear_forest,
    length_key,
)
from .errors import ExistenceFailure, IllegalSurgery
from .graph import Graph, bits
from .graph6 import to_graph6
from .search import DEFAULT_NODE_CAP, find_assignment
from .split import SplitPartition

log = logging.getLogger(__name__)

MAX_PATH_LENGTH = 6


def build_pseudo_icover(g: Graph, p: SplitPartition, node_cap: int = DEFAULT_NODE_CAP) -> PseudoICover:
    if not p.I:
        return PseudoICover()
    assign = find_assignment(g, p, node_cap=node_cap)
    if assign is None:
        raise ExistenceFailure("no pseudo I-cover exists", to_graph6(g), "pseudo_icover")
    q = assignment_to_cover(assign)
    check_pseudo_icover(g, p, q)
    return q


def min_cycle_pseudo_icover(g: Graph, p: SplitPartition, node_cap: int = DEFAULT_NODE_CAP) -> PseudoICover:
    """A pseudo I-cover with the fewest alternating cycles."""
    if not p.I:
        return PseudoICover()
    assign = find_assignment(g, p, minimize_cycles=True, node_cap=node_cap)
    if assign is None:
        raise ExistenceFailure("no pseudo I-cover exists", to_graph6(g), "pseudo_icover")
    q = assignment_to_cover(assign)
    check_pseudo_icover(g, p, q)
    return q


def open_cycle_with_outside_vertex(
    g: Graph, p: SplitPartition, q: PseudoICover, cycle_index: int, x: int, y: int
) -> PseudoICover:
    """Open cycle ``cycle_index`` at its I-vertex ``x`` using the edge ``xy``.

    ``y`` is either an S-vertex outside the cover, giving a path on
    V(C) + y, or an endpoint of a cover path, which is then merged with the
    cycle into one path on V(C) + V(P). The edge from ``x`` to its cycle
    predecessor is the one dropped.
    """
    if not 0 <= cycle_index < len(q.cycles):
        raise IllegalSurgery(f"no cycle with index {cycle_index}")
    cyc = q.cycles[cycle_index].sequence
    if x not in cyc[1::2]:
        raise IllegalSurgery(f"{x} is not an I-vertex of cycle {cycle_index}")
    if y in cyc:
        raise IllegalSurgery(f"{y} lies on the cycle being opened")
    if y not in p.S:
        raise IllegalSurgery(f"{y} is not in S")
    if not g.has_edge(x, y):
        raise IllegalSurgery(f"{x}{y} is not an edge")
    pos = cyc.index(x)
    # walk the cycle from x's successor round to x's predecessor
    tail = [cyc[(pos + k) % len(cyc)] for k in range(1, len(cyc))]
    opened = [y, x, *tail]
    host = None
    for k, path in enumerate(q.paths):
        if y in path.sequence:
            if y not in path.ends:
                raise IllegalSurgery(f"{y} is interior to path {k}")
            host = k
    if host is None:
        if any(y in c.sequence for c in q.cycles):
            raise IllegalSurgery(f"{y} lies on another cycle")
        merged = opened
    else:
        seq = list(q.paths[host].sequence)
        if seq[-1] != y:
            seq.reverse()
        merged = seq[:-1] + opened
    assign: Assignment = {}
    for k in range(1, len(merged), 2):
        a, c = merged[k - 1], merged[k + 1]
        assign[merged[k]] = (min(a, c), max(a, c))
    others = PseudoICover(
        tuple(path for k, path in enumerate(q.paths) if k != host),
        tuple(c for k, c in enumerate(q.cycles) if k != cycle_index),
    )
    assign.update(cover_to_assignment(others))
    out = assignment_to_cover(assign)
    check_pseudo_icover(g, p, out)
    return out


def enabled_openings(g: Graph, p: SplitPartition, q: PseudoICover) -> list[tuple[int, int, int]]:
    """All (cycle index, x, y) for which open_cycle_with_outside_vertex applies, sorted."""
    covered = 0
    for path in q.paths:
        for v in path.sequence:
            covered |= 1 << v
    for c in q.cycles:
        for v in c.sequence:
            covered |= 1 << v
    targets = p.s_mask & ~covered
    for path in q.paths:
        for v in path.ends:
            targets |= 1 << v
    moves = []
    for k, c in enumerate(q.cycles):
        for x in sorted(c.sequence[1::2]):
            for y in bits(g.adj[x] & targets):
                moves.append((k, x, y))
    return moves


def build_icover(g: Graph, p: SplitPartition, node_cap: int = DEFAULT_NODE_CAP) -> ICover:
    """An I-cover, guaranteed to exist for 3-connected {K14, K14E}-free split graphs on >= 9 vertices.

    Raises ExistenceFailure when none exists and SearchBudgetExceeded when
    the fallback search gives up.
    """
    if not p.I:
        return ICover()
    q = build_pseudo_icover(g, p, node_cap)
    while q.cycles:
        moves = enabled_openings(g, p, q)
        if not moves:
            break
        q = open_cycle_with_outside_vertex(g, p, q, *moves[0])
    if q.cycles:
        log.debug("%d cycle(s) left after openings; exhaustive fallback", len(q.cycles))
        assign = find_assignment(g, p, acyclic=True, node_cap=node_cap)
        if assign is None:
            raise ExistenceFailure("no I-cover exists", to_graph6(g), "icover")
        c = assignment_to_icover(assign)
    else:
        c = ICover(q.paths)
    check_icover(g, p, c)
    return c


def single_reassignments(g: Graph, p: SplitPartition, assign: Assignment):
    """Yield (b, new_pair, new_assignment) for every one-vertex change that stays an I-cover."""
    s_mask = p.s_mask
    for b in sorted(assign):
        nbrs = list(bits(g.adj[b] & s_mask))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if (x, y) == assign[b]:
                    continue
                trial = dict(assign)
                trial[b] = (x, y)
                if is_linear_forest(trial):
                    yield b, (x, y), trial


def max_length(c: ICover) -> int:
    return max((q.length for q in c.paths), default=0)


def bound_lengths(
    g: Graph, p: SplitPartition, c: ICover, node_cap: int = DEFAULT_NODE_CAP
) -> ICover:
    """An I-cover whose paths all have length at most 6.

    Local search maximises (h, -t1, -#longest) over single reassignments,
    which include splitting a path at an I-vertex with an outside neighbour
    and trading segments between a longest path and another through a
    cross edge. Exhaustive search bounded to 3 S-edges per path is the
    fallback.
    """
    if max_length(c) <= MAX_PATH_LENGTH:
        return c
    assign = cover_to_assignment(c)
    key = length_key(c)
    while True:
        best = None
        for _, _, trial in single_reassignments(g, p, assign):
            cand = assignment_to_icover(trial)
            k = length_key(cand)
            if k > key and (best is None or k > best[0]):
                best = (k, trial, cand)
        if best is None:
            break
        key, assign, c = best
        if max_length(c) <= MAX_PATH_LENGTH:
            check_icover(g, p, c)
            return c
    log.debug("local search stalled at %s; exhaustive fallback", key)
    found = find_assignment(
        g, p, acyclic=True, max_path_edges=MAX_PATH_LENGTH // 2, value_order="spread",
        node_cap=node_cap,
    )
    if found is None:
        raise ExistenceFailure("no I-cover with path lengths <= 6", to_graph6(g), "bound_lengths")
    out = assignment_to_icover(found)
    check_icover(g, p, out)
    return out
