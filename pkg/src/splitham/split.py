"""Split graph recognition and the split partition (S, I)."""

from __future__ import annotations

from dataclasses import dataclass

from .connectivity import is_k_connected
from .errors import InvariantViolation, PreconditionViolated
from .graph import Graph, bits, mask_of


@dataclass(frozen=True)
class SplitPartition:
    """``S`` is a maximum clique, ``I`` the complementary independent set."""

    S: tuple[int, ...]
    I: tuple[int, ...]

    @property
    def s_mask(self) -> int:
        return mask_of(self.S)

    @property
    def i_mask(self) -> int:
        return mask_of(self.I)

    @property
    def s(self) -> int:
        return len(self.S)

    def to_json_obj(self) -> dict:
        return {"S": list(self.S), "I": list(self.I)}


def split_partition(g: Graph) -> SplitPartition | None:
    """Return the split partition of ``g`` or None when ``g`` is not split.

    Recognition uses the Hammer-Simeone degree-sequence test. Among all
    maximum cliques whose complement is independent, the lexicographically
    smallest sorted vertex list is chosen.
    """
    n = g.order
    if n == 0:
        return SplitPartition((), ())
    deg = g.degrees()
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    d = [deg[v] for v in order]
    m = max(i for i in range(1, n + 1) if d[i - 1] >= i - 1)
    if sum(d[:m]) != m * (m - 1) + sum(d[m:]):
        return None
    clique = mask_of(order[:m])
    # Every other maximum clique is K - w + v with N(v) = K - w, and it splits
    # the graph only if w has no neighbour outside K.
    candidates = [clique]
    outside = g.all_mask & ~clique
    for v in bits(outside):
        nv = g.adj[v]
        if nv & ~clique or nv.bit_count() != m - 1:
            continue
        w_mask = clique & ~nv
        w = w_mask.bit_length() - 1
        if not g.adj[w] & outside:
            candidates.append((clique & ~w_mask) | (1 << v))
    best = min(candidates, key=lambda c: list(bits(c)))
    S = tuple(bits(best))
    I = tuple(bits(g.all_mask & ~best))
    return SplitPartition(S, I)


def check_partition(g: Graph, p: SplitPartition) -> list[str]:
    """Problems with ``p`` as a split partition of ``g`` (empty list if none).

    Maximality of S is not checked here; it needs a clique search.
    """
    problems = []
    s, i = p.s_mask, p.i_mask
    if s & i:
        problems.append("S and I intersect")
    if s | i != g.all_mask or len(p.S) + len(p.I) != g.order:
        problems.append("S and I do not partition V(G)")
    if not g.is_clique(s):
        problems.append("S is not a clique")
    if not g.is_independent(i):
        problems.append("I is not independent")
    for v in p.I:
        if g.adj[v] & ~s:
            problems.append(f"I-vertex {v} has a neighbour outside S")
    return problems


def assert_connectivity_clique_bound(g: Graph, p: SplitPartition, k: int) -> bool:
    """A k-connected split graph with I nonempty has |S| >= k+1.

    Returns True; raises InvariantViolation if the bound fails, which can
    only mean split_partition or is_k_connected is wrong.
    """
    if not p.I:
        raise PreconditionViolated("I is empty; the clique bound concerns graphs with |I| > 0")
    if not is_k_connected(g, k):
        raise PreconditionViolated(f"graph is not {k}-connected")
    if check_partition(g, p):
        raise PreconditionViolated("p is not a split partition of g")
    if p.s < k + 1:
        raise InvariantViolation(f"|S| = {p.s} < k+1 = {k + 1} on a {k}-connected split graph")
    return True
