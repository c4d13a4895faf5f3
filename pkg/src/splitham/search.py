"""Backtracking search over pair assignments.

Each I-vertex picks two distinct S-neighbours; the multigraph on S must keep
maximum degree 2. Path components are tracked by their endpoints, so testing
whether a new pair closes a cycle, how long the merged path is, and which two
vertices end up as its ends are all O(1). Variables are chosen
most-constrained first with forward checking.
"""

from __future__ import annotations

from itertools import combinations

from .cover import Assignment
from .errors import SearchBudgetExceeded
from .graph import Graph, bits
from .split import SplitPartition

DEFAULT_NODE_CAP = 10**7


class AssignmentSearch:
    """Configurable search for pseudo I-covers and I-covers in assignment form.

    acyclic          forbid cycles (I-cover instead of pseudo I-cover)
    max_path_edges   cap on S-multigraph edges per path (path length = 2 * edges)
    caps             per-S-vertex degree cap overriding the default 2
    forbid_ends      a pair {u, v} that must not be the two ends of one path
    minimize_cycles  branch and bound on the number of cycles
    value_order      "chain" grows existing paths first, "spread" opens new ones
    """

    def __init__(
        self,
        g: Graph,
        p: SplitPartition,
        *,
        acyclic: bool = False,
        max_path_edges: int | None = None,
        caps: dict[int, int] | None = None,
        forbid_ends: tuple[int, int] | None = None,
        minimize_cycles: bool = False,
        value_order: str = "chain",
        node_cap: int = DEFAULT_NODE_CAP,
    ):
        self.acyclic = acyclic
        self.max_edges = max_path_edges
        self.minimize_cycles = minimize_cycles and not acyclic
        self.node_cap = node_cap
        self.nodes = 0
        self.value_order = value_order
        n = g.order
        self.cap = [0] * n
        for v in p.S:
            self.cap[v] = 2
        for v, c in (caps or {}).items():
            self.cap[v] = min(self.cap[v], c)
        self.forbid = frozenset(forbid_ends) if forbid_ends else None
        s_mask = p.s_mask
        self.options = {
            b: list(combinations(bits(g.adj[b] & s_mask), 2)) for b in p.I
        }
        self.deg = [0] * n
        self.other = list(range(n))
        self.edges = [0] * n
        self.cycles = 0
        self.assign: Assignment = {}
        self.best: Assignment | None = None
        self.best_cycles = n + 1

    # -- state -------------------------------------------------------------

    def _feasible(self, x: int, y: int) -> tuple[int, ...] | None:
        """Sort key for adding pair (x, y), or None if the pair is illegal."""
        deg, cap, other = self.deg, self.cap, self.other
        if deg[x] >= cap[x] or deg[y] >= cap[y]:
            return None
        closes = deg[x] == 1 and other[x] == y
        if closes:
            if self.acyclic:
                return None
            if self.minimize_cycles and self.cycles + 1 >= self.best_cycles:
                return None
        else:
            if self.max_edges is not None:
                total = (self.edges[x] if deg[x] else 0) + (self.edges[y] if deg[y] else 0) + 1
                if total > self.max_edges:
                    return None
            if self.forbid is not None and frozenset((other[x], other[y])) == self.forbid:
                return None
        attached = [z for z in (x, y) if deg[z] == 1]
        if self.value_order == "spread":
            return (closes, len(attached), x, y)
        return (closes, -len(attached), -max(attached, default=-1), x, y)

    def _push(self, b: int, x: int, y: int):
        deg, other, edges = self.deg, self.other, self.edges
        closes = deg[x] == 1 and other[x] == y
        ex, ey = other[x], other[y]
        undo = (b, x, y, closes, ex, ey, other[ex], other[ey], edges[ex], edges[ey])
        if closes:
            self.cycles += 1
        else:
            total = (edges[x] if deg[x] else 0) + (edges[y] if deg[y] else 0) + 1
            other[ex], other[ey] = ey, ex
            edges[ex] = edges[ey] = total
        deg[x] += 1
        deg[y] += 1
        self.assign[b] = (x, y)
        return undo

    def _pop(self, undo) -> None:
        b, x, y, closes, ex, ey, oex, oey, eex, eey = undo
        deg, other, edges = self.deg, self.other, self.edges
        deg[x] -= 1
        deg[y] -= 1
        if closes:
            self.cycles -= 1
        else:
            other[ey], other[ex] = oey, oex
            edges[ey], edges[ex] = eey, eex
        del self.assign[b]

    # -- search ------------------------------------------------------------

    def run(self) -> Assignment | None:
        """First solution, or the cycle-minimal one under ``minimize_cycles``.

        Raises SearchBudgetExceeded if the node cap is hit before a decision.
        """
        self._rec(sorted(self.options))
        return None if self.best is None else dict(self.best)

    def _rec(self, pending: list[int]) -> bool:
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise SearchBudgetExceeded(
                f"backtracking exceeded {self.node_cap} nodes", self.nodes
            )
        if not pending:
            if self.cycles < self.best_cycles:
                self.best = dict(self.assign)
                self.best_cycles = self.cycles
            return not self.minimize_cycles or self.cycles == 0
        chosen = None
        chosen_moves: list = []
        for b in pending:
            moves = []
            for x, y in self.options[b]:
                key = self._feasible(x, y)
                if key is not None:
                    moves.append((key, x, y))
            if not moves:
                return False
            if chosen is None or len(moves) < len(chosen_moves):
                chosen, chosen_moves = b, moves
        rest = [b for b in pending if b != chosen]
        chosen_moves.sort()
        for _, x, y in chosen_moves:
            if self._feasible(x, y) is None:
                continue
            undo = self._push(chosen, x, y)
            done = self._rec(rest)
            self._pop(undo)
            if done:
                return True
        return False


def find_assignment(g: Graph, p: SplitPartition, **kwargs) -> Assignment | None:
    return AssignmentSearch(g, p, **kwargs).run()
