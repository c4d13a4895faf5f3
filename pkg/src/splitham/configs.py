"""Partition-aware forbidden configurations.

CONFIG_A: two clique vertices u, v with private I-neighbours a, b, c (of u)
and x, y (of v), i.e. a K_{1,3} and a K_{1,2} centred in S and vertex-disjoint.
CONFIG_B: three clique vertices each with two private I-neighbours (3 K_{1,2}).

Only the listed centre-leaf edges are required; other edges are unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .graph import Graph, bits
from .patterns import Pattern
from .split import SplitPartition

LEAF_COUNTS = {Pattern.CONFIG_A: (3, 2), Pattern.CONFIG_B: (2, 2, 2)}


@dataclass(frozen=True)
class ConfigWitness:
    config_id: str
    centers: tuple[int, ...]
    leaves: tuple[int, ...]

    def leaf_groups(self) -> list[tuple[int, ...]]:
        groups = []
        pos = 0
        for k in LEAF_COUNTS[Pattern(self.config_id)]:
            groups.append(self.leaves[pos:pos + k])
            pos += k
        return groups

    def to_json_obj(self) -> dict:
        return {"config": self.config_id, "centers": list(self.centers), "leaves": list(self.leaves)}


def _assign_leaves(i_nbrs: list[int], counts: tuple[int, ...]) -> list[tuple[int, ...]] | None:
    """Pick disjoint leaf tuples, lowest index first, backtracking on clashes."""
    out: list[tuple[int, ...]] = []

    def rec(k: int, used: int) -> bool:
        if k == len(counts):
            return True
        avail = [x for x in bits(i_nbrs[k]) if not (used >> x) & 1]
        for combo in combinations(avail, counts[k]):
            m = 0
            for x in combo:
                m |= 1 << x
            out.append(combo)
            if rec(k + 1, used | m):
                return True
            out.pop()
        return False

    return out if rec(0, 0) else None


def _find(g: Graph, p: SplitPartition, config: Pattern) -> ConfigWitness | None:
    counts = LEAF_COUNTS[config]
    i_mask = p.i_mask
    i_nbrs = {u: g.adj[u] & i_mask for u in p.S}
    eligible = [u for u in p.S if i_nbrs[u].bit_count() >= 2]
    if len(eligible) < len(counts) or i_mask.bit_count() < sum(counts):
        return None
    # CONFIG_A roles are asymmetric (ordered pair); CONFIG_B roles are symmetric.
    centre_iter = (
        permutations(eligible, 2) if config is Pattern.CONFIG_A else combinations(eligible, 3)
    )
    for centres in centre_iter:
        masks = [i_nbrs[c] for c in centres]
        if any(m.bit_count() < k for m, k in zip(masks, counts)):
            continue
        union = 0
        for m in masks:
            union |= m
        if union.bit_count() < sum(counts):
            continue
        groups = _assign_leaves(masks, counts)
        if groups is not None:
            leaves = tuple(x for grp in groups for x in grp)
            return ConfigWitness(config.value, tuple(centres), leaves)
    return None


def find_config_A(g: Graph, p: SplitPartition) -> ConfigWitness | None:
    return _find(g, p, Pattern.CONFIG_A)


def find_config_B(g: Graph, p: SplitPartition) -> ConfigWitness | None:
    return _find(g, p, Pattern.CONFIG_B)


def replay_config(g: Graph, p: SplitPartition, w: ConfigWitness) -> bool:
    """Centres in S, leaves in I, all distinct, every centre-leaf edge present."""
    config = Pattern(w.config_id)
    counts = LEAF_COUNTS[config]
    if len(w.centers) != len(counts) or len(w.leaves) != sum(counts):
        return False
    verts = (*w.centers, *w.leaves)
    if len(set(verts)) != len(verts):
        return False
    S, I = set(p.S), set(p.I)
    if not set(w.centers) <= S or not set(w.leaves) <= I:
        return False
    return all(
        g.has_edge(c, x) for c, grp in zip(w.centers, w.leaf_groups()) for x in grp
    )
