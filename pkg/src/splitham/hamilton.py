"""Hamiltonian (u,v)-paths: certificates, construction from I-covers, and an exact oracle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cover import (
    ICover,
    check_icover,
    cover_to_assignment,
    inn_mask,
    is_linear_forest,
    assignment_to_icover,
)
from .errors import (
    ConstructionFailure,
    ExistenceFailure,
    OrderCapExceeded,
    PreconditionViolated,
)
from .graph import Graph, bits
from .graph6 import to_graph6
from .search import DEFAULT_NODE_CAP, find_assignment
from .split import SplitPartition
from .surgery import bound_lengths, build_icover, single_reassignments

DEFAULT_ORACLE_CAP = 22


@dataclass(frozen=True)
class HamPathCertificate:
    sequence: tuple[int, ...]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.sequence[0], self.sequence[-1]


def verify_certificate(g: Graph, cert: HamPathCertificate | tuple | list, u: int, v: int) -> bool:
    """True iff ``cert`` is a Hamiltonian path of ``g`` from ``u`` to ``v``.

    Deliberately self-contained: it uses nothing but the adjacency rows.
    """
    seq = cert.sequence if isinstance(cert, HamPathCertificate) else tuple(cert)
    n = g.order
    if len(seq) != n or n == 0:
        return False
    if sorted(seq) != list(range(n)):
        return False
    if seq[0] != u or seq[-1] != v:
        return False
    adj = g.adj
    return all((adj[a] >> b) & 1 for a, b in zip(seq, seq[1:]))


# -- construction from an I-cover -------------------------------------------


def avoidance_defect(c: ICover, u: int, v: int) -> int:
    """|{u,v} & Inn(c)| plus one if u, v are the two ends of one path."""
    inn = inn_mask(c)
    bad = ((inn >> u) & 1) + ((inn >> v) & 1)
    if any(set(q.ends) == {u, v} for q in c.paths):
        bad += 1
    return bad


def _pieces(g: Graph, p: SplitPartition, c: ICover, cut: set[int]) -> list[list[int]]:
    """Cover paths with the I-vertices in ``cut`` removed, plus S-vertices outside the cover.

    Every piece starts and ends in S.
    """
    pieces = []
    covered = 0
    for q in c.paths:
        cur: list[int] = []
        for w in q.sequence:
            covered |= 1 << w
            if w in cut:
                pieces.append(cur)
                cur = []
            else:
                cur.append(w)
        pieces.append(cur)
    for w in bits(p.s_mask & ~covered):
        pieces.append([w])
    return sorted(pieces)


def ham_path_from_icover(
    g: Graph, p: SplitPartition, c: ICover, u: int, v: int
) -> HamPathCertificate:
    """Thread a Hamiltonian (u,v)-path through the cover.

    Removing u and v (when they are I-vertices) from their paths leaves
    pieces whose ends all lie in the clique S, so any sequence of oriented
    pieces chained end to start is a path. u is attached in front of a piece
    with an end in N(u), v behind a different piece with an end in N(v), and
    the remaining pieces go in between in ascending order.
    """
    if u == v:
        raise PreconditionViolated("u and v must differ")
    n = g.order
    if not (0 <= u < n and 0 <= v < n):
        raise PreconditionViolated("u or v out of range")
    inn = inn_mask(c)
    if (inn >> u) & 1 or (inn >> v) & 1:
        raise PreconditionViolated(f"{u} or {v} is an inner clique vertex of the cover")
    if any(set(q.ends) == {u, v} for q in c.paths):
        raise PreconditionViolated(f"{u} and {v} are the two ends of one cover path")
    I = set(p.I)
    cut = {w for w in (u, v) if w in I}
    pieces = _pieces(g, p, c, cut)
    pieces = [pc for pc in pieces if pc]

    def options(w: int) -> list[tuple[int, list[int]]]:
        """(piece index, piece oriented to start next to w)."""
        out = []
        for k, pc in enumerate(pieces):
            if w in cut:
                if g.has_edge(w, pc[0]):
                    out.append((k, pc))
                elif g.has_edge(w, pc[-1]):
                    out.append((k, pc[::-1]))
            elif pc[0] == w:
                out.append((k, pc))
            elif pc[-1] == w:
                out.append((k, pc[::-1]))
        return out

    state = {"graph6": to_graph6(g), "cover": c.to_json_obj(), "u": u, "v": v}
    for ku, head in options(u):
        for kv, tail in options(v):
            if ku == kv:
                continue
            seq = [u] if u in cut else []
            seq += head
            for k, pc in enumerate(pieces):
                if k not in (ku, kv):
                    seq += pc
            seq += tail[::-1]
            if v in cut:
                seq.append(v)
            cert = HamPathCertificate(tuple(seq))
            if not verify_certificate(g, cert, u, v):
                raise ConstructionFailure("threaded sequence failed verification", {**state, "sequence": seq})
            return cert
    raise ConstructionFailure("no head/tail piece pair available", state)


# -- covers avoiding a pair ----------------------------------------------------


def _end_swaps(g: Graph, p: SplitPartition, pair: tuple[int, int], b: int):
    """Pairs for ``b`` keeping one of its current S-vertices and moving the other."""
    x, y = pair
    for z in bits(g.adj[b] & p.s_mask):
        if z != x and z != y:
            yield (min(x, z), max(x, z))
            yield (min(z, y), max(z, y))


def _swap_moves(g: Graph, p: SplitPartition, assign, u: int, v: int):
    """Candidate assignments: all single reassignments, then paired end swaps.

    A paired swap moves an I-vertex next to u or v onto a new S-vertex z and
    shifts one I-vertex already hanging on z elsewhere, as in
    P - {a b, c d} + {b z, d w}.
    """
    for _, _, trial in single_reassignments(g, p, assign):
        yield trial
    focus = sorted(b for b, pair in assign.items() if u in pair or v in pair)
    for b1 in focus:
        for new1 in _end_swaps(g, p, assign[b1], b1):
            first = dict(assign)
            first[b1] = new1
            moved = (set(new1) - set(assign[b1])).pop()
            for b2 in sorted(assign):
                if b2 == b1 or moved not in assign[b2]:
                    continue
                for new2 in _end_swaps(g, p, assign[b2], b2):
                    trial = dict(first)
                    trial[b2] = new2
                    yield trial


def build_icover_avoiding(
    g: Graph,
    p: SplitPartition,
    u: int,
    v: int,
    covers: list[ICover] | tuple[ICover, ...] = (),
    node_cap: int = DEFAULT_NODE_CAP,
    local_rounds: int = 8,
) -> ICover:
    """An I-cover with u, v outside Inn and not the two ends of one path.

    Tries the supplied ``covers`` first, then build_icover + bound_lengths,
    then local search minimising (defect, -h) over single and paired
    reassignments (swapping a cover edge for an incident graph edge), and finally
    exhaustive search with u, v barred from the inner clique vertices.
    """
    if u == v:
        raise PreconditionViolated("u and v must differ")
    pool = list(covers)
    if not pool:
        pool.append(bound_lengths(g, p, build_icover(g, p, node_cap), node_cap))
    for c in pool:
        if avoidance_defect(c, u, v) == 0:
            return c
    start = min(pool, key=lambda c: (avoidance_defect(c, u, v), -len(c.paths)))
    assign = cover_to_assignment(start)
    score = (avoidance_defect(start, u, v), -len(start.paths))
    for _ in range(local_rounds):
        improved = None
        for trial in _swap_moves(g, p, assign, u, v):
            if not is_linear_forest(trial):
                continue
            cand = assignment_to_icover(trial)
            sc = (avoidance_defect(cand, u, v), -len(cand.paths))
            if sc < score:
                improved = (sc, trial, cand)
                if sc[0] == 0:
                    break
        if improved is None:
            break
        score, assign, cand = improved
        if score[0] == 0:
            check_icover(g, p, cand)
            return cand
    S = set(p.S)
    caps = {w: 1 for w in (u, v) if w in S}
    forbid = (u, v) if u in S and v in S else None
    found = find_assignment(
        g, p, acyclic=True, caps=caps, forbid_ends=forbid, value_order="spread", node_cap=node_cap
    )
    if found is None:
        raise ExistenceFailure(
            f"no I-cover avoids the pair ({u}, {v})", to_graph6(g), "icover_avoiding"
        )
    out = assignment_to_icover(found)
    check_icover(g, p, out)
    return out


# -- exact oracle ---------------------------------------------------------------


@lru_cache(maxsize=4)
def _layers(n: int) -> tuple[tuple[np.ndarray, ...], ...]:
    """For each popcount k and vertex w: the k-subsets of range(n) that miss w."""
    masks = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros(1 << n, dtype=np.int8)
    for v in range(n):
        pop += ((masks >> v) & 1).astype(np.int8)
    out = []
    for k in range(n + 1):
        layer = masks[pop == k]
        out.append(tuple(layer[((layer >> w) & 1) == 0] for w in range(n)))
    return tuple(out)


def ham_endpoint_table(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> list[int]:
    """``table[v]`` is the bitmask of all u with a Hamiltonian (u,v)-path.

    Subset dynamic programming over (vertex set, last vertex) states, with
    every possible start vertex tracked at once as a bit in the state value.
    Layer by layer, each new last vertex w collects the OR of its
    neighbours' columns over the subsets that miss w.
    """
    n = g.order
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds oracle cap {cap}")
    if n == 0:
        return []
    if n == 1:
        return [1]
    dtype = np.uint16 if n <= 16 else np.uint32 if n <= 32 else np.uint64
    size = 1 << n
    dp = np.zeros((size, n), dtype=dtype)
    for v in range(n):
        dp[1 << v, v] = 1 << v
    layers = _layers(n)
    nbrs = [np.array(list(bits(m)), dtype=np.intp) for m in g.adj]
    for k in range(1, n):
        for w in range(n):
            if nbrs[w].size == 0:
                continue
            src = layers[k][w]
            vals = np.bitwise_or.reduce(dp[src][:, nbrs[w]], axis=1)
            dp[src | (1 << w), w] = vals
    row = dp[size - 1]
    return [int(x) for x in row]


def hamilton_connected_oracle(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> dict:
    """{"connected": bool, "failing_pairs": [[u, v], ...]} over unordered pairs u < v."""
    table = ham_endpoint_table(g, cap)
    failing = [
        [u, v] for u in range(g.order) for v in range(u + 1, g.order) if not (table[v] >> u) & 1
    ]
    return {"connected": not failing, "failing_pairs": failing}
