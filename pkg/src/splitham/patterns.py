"""Induced star patterns: K_{1,3}, K_{1,4}, K_{1,4}+e and their K_{1,r+1} analogues.

Every pattern here is a star whose centre is the unique vertex adjacent to all
leaves, so the search runs over centres of sufficient degree and picks leaf
sets with the right number of leaf-leaf edges. No generic isomorphism code.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .graph import Graph, bits


class Pattern(str, Enum):
    K13 = "K13"
    K14 = "K14"
    K14E = "K14E"
    CONFIG_A = "CONFIG_A"
    CONFIG_B = "CONFIG_B"


# (leaf count, leaf-leaf edges) for the star-shaped patterns
STAR_SHAPES = {
    Pattern.K13: (3, 0),
    Pattern.K14: (4, 0),
    Pattern.K14E: (4, 1),
}


@dataclass(frozen=True)
class PatternWitness:
    """``mapping`` is ``[centre, leaf1, leaf2, ...]``.

    For a star with an extra edge the extra edge always joins ``leaf1`` and
    ``leaf2``.
    """

    pattern_id: str
    mapping: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {"pattern": self.pattern_id, "mapping": list(self.mapping)}


def star_edges(leaves: int, extra_edge: bool) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Required edges and non-edges of a star pattern over role indices."""
    roles = range(1, leaves + 1)
    edges = [(0, i) for i in roles]
    non_edges = [(i, j) for i in roles for j in roles if i < j]
    if extra_edge:
        edges.append((1, 2))
        non_edges.remove((1, 2))
    return edges, non_edges


def find_star(g: Graph, leaves: int, extra_edges: int = 0) -> PatternWitness | None:
    """Find an induced K_{1,leaves} (extra_edges=0) or K_{1,leaves}+e (extra_edges=1).

    The first witness in (centre, sorted leaf tuple) order is returned.
    """
    if extra_edges not in (0, 1):
        raise ValueError("extra_edges must be 0 or 1")
    adj = g.adj
    for c in range(g.order):
        nbhd = adj[c]
        if nbhd.bit_count() < leaves:
            continue
        cand = list(bits(nbhd))
        found = _pick_leaves(adj, cand, leaves, extra_edges)
        if found is not None:
            name = _star_name(leaves, extra_edges)
            return PatternWitness(name, (c, *_order_leaves(adj, found, extra_edges)))
    return None


def _pick_leaves(adj, cand: list[int], need: int, budget: int) -> list[int] | None:
    """Choose ``need`` vertices of ``cand`` spanning exactly ``budget`` edges.

    Backtracking with a running edge count; branches exceeding the budget are
    cut immediately.
    """
    chosen: list[int] = []
    m = len(cand)

    def rec(start: int, chosen_mask: int, used: int) -> bool:
        if len(chosen) == need:
            return used == budget
        for idx in range(start, m - (need - len(chosen)) + 1):
            v = cand[idx]
            add = (adj[v] & chosen_mask).bit_count()
            if used + add > budget:
                continue
            chosen.append(v)
            if rec(idx + 1, chosen_mask | (1 << v), used + add):
                return True
            chosen.pop()
        return False

    return list(chosen) if rec(0, 0, 0) else None


def _order_leaves(adj, leaves: list[int], extra_edges: int) -> list[int]:
    if not extra_edges:
        return leaves
    for i, a in enumerate(leaves):
        for b in leaves[i + 1:]:
            if (adj[a] >> b) & 1:
                rest = [x for x in leaves if x not in (a, b)]
                return [a, b, *rest]
    raise AssertionError("extra edge vanished")


def _star_name(leaves: int, extra_edges: int) -> str:
    if leaves == 3 and not extra_edges:
        return Pattern.K13.value
    if leaves == 4:
        return (Pattern.K14E if extra_edges else Pattern.K14).value
    return f"K1_{leaves}" + ("E" if extra_edges else "")


def find_induced(g: Graph, pattern_id: Pattern | str) -> PatternWitness | None:
    """Induced copy of K13, K14 or K14E, or None."""
    pattern = Pattern(pattern_id)
    if pattern not in STAR_SHAPES:
        raise ValueError(f"{pattern.value} is partition-aware; use the configs module")
    leaves, extra = STAR_SHAPES[pattern]
    return find_star(g, leaves, extra)


def is_free(g: Graph, patterns: Iterable[Pattern | str]) -> bool:
    return all(find_induced(g, p) is None for p in patterns)


def is_star_free(g: Graph, r: int) -> bool:
    """True iff g is {K_{1,r+1}, K_{1,r+1}+e}-free."""
    return find_star(g, r + 1, 0) is None and find_star(g, r + 1, 1) is None


def replay_witness(g: Graph, w: PatternWitness) -> bool:
    """Check a star witness against ``g``: distinct vertices, edges and non-edges."""
    mapping = w.mapping
    if len(set(mapping)) != len(mapping) or any(not 0 <= v < g.order for v in mapping):
        return False
    extra = w.pattern_id.endswith("E")
    edges, non_edges = star_edges(len(mapping) - 1, extra)
    return all(g.has_edge(mapping[i], mapping[j]) for i, j in edges) and not any(
        g.has_edge(mapping[i], mapping[j]) for i, j in non_edges
    )
