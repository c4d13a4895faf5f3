"""Connectivity and vertex-connectivity tests."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from math import comb

from .graph import Graph, bits

# Above this many candidate separators the max-flow route is cheaper.
CUT_ENUMERATION_LIMIT = 5000


def _spans(adj: tuple[int, ...], alive: int) -> bool:
    """True iff the subgraph induced by ``alive`` is connected (or empty)."""
    if not alive:
        return True
    start = alive & -alive
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & alive & ~seen
        seen |= frontier
    return seen == alive


def is_connected(g: Graph) -> bool:
    """Connectivity test; graphs on 0 or 1 vertices count as connected."""
    return _spans(g.adj, g.all_mask)


def is_connected_without(g: Graph, removed: int) -> bool:
    return _spans(g.adj, g.all_mask & ~removed)


def _cuts_route(g: Graph, k: int) -> bool:
    # Any separator smaller than k-1 extends to one of size exactly k-1
    # while n >= k+1, so only those need checking.
    adj = g.adj
    full = g.all_mask
    for removed in combinations(range(g.order), k - 1):
        m = 0
        for v in removed:
            m |= 1 << v
        if not _spans(adj, full & ~m):
            return False
    return True


def local_vertex_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Maximum number of internally disjoint (s,t)-paths for nonadjacent s, t.

    Unit-capacity max flow on the split digraph (v_in -> v_out of capacity 1);
    stops early once ``limit`` paths are found.
    """
    if g.has_edge(s, t):
        raise ValueError("s and t must be nonadjacent")
    n = g.order
    # node 2v = v_in, 2v+1 = v_out
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap[(b, a)] = cap.get((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = n
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for w in bits(g.adj[v]):
            arc(2 * v + 1, 2 * w, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while limit is None or flow < limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def _flow_route(g: Graph, k: int) -> bool:
    n = g.order
    for s in range(n):
        for t in range(s + 1, n):
            if not g.has_edge(s, t) and local_vertex_connectivity(g, s, t, limit=k) < k:
                return False
    return True


def is_k_connected(g: Graph, k: int, method: str = "auto") -> bool:
    """True iff ``g`` has at least k+1 vertices and no separator of size < k.

    ``K_n`` is (n-1)-connected. ``method`` selects separator enumeration
    ("cuts"), max flow ("flow"), or whichever is cheaper ("auto").
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = g.order
    if n < k + 1:
        return False
    if g.is_complete():
        return True
    if min(g.degrees()) < k:
        return False
    if k == 1:
        return is_connected(g)
    if method == "auto":
        method = "cuts" if comb(n, k - 1) <= CUT_ENUMERATION_LIMIT else "flow"
    if method == "cuts":
        return _cuts_route(g, k)
    if method == "flow":
        return _flow_route(g, k)
    raise ValueError(f"unknown method {method!r}")


def vertex_connectivity(g: Graph) -> int:
    """kappa(G), with kappa(K_n) = n-1."""
    if g.order <= 1:
        return 0
    k = 0
    while k + 1 <= g.order - 1 and is_k_connected(g, k + 1):
        k += 1
    return k
