"""Immutable simple undirected graphs with bitmask adjacency.

Vertices are the integers ``0..n-1``. Row ``v`` of the adjacency is a Python
int whose bit ``w`` is set iff ``vw`` is an edge, so set algebra on
neighbourhoods is a handful of integer operations regardless of ``n``.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Sequence

from .errors import MalformedGraphInput

MAX_ORDER = 512


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A simple undirected graph on vertices ``0..order-1``."""

    __slots__ = ("_order", "_adj", "_hash")

    def __init__(self, order: int, edges: Iterable[Sequence[int]] = ()):
        if order < 0 or order > MAX_ORDER:
            raise ValueError(f"order must lie in 0..{MAX_ORDER}, got {order}")
        adj = [0] * order
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._order = order
        self._adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        """Build from adjacency bitmasks, checking symmetry and irreflexivity."""
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if (m >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            for w in bits(m):
                if not (masks[w] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
        g = cls.__new__(cls)
        g._order = n
        g._adj = tuple(int(m) for m in masks)
        g._hash = None
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls.from_masks([full ^ (1 << v) for v in range(n)])

    @property
    def order(self) -> int:
        return self._order

    @property
    def adj(self) -> tuple[int, ...]:
        """Adjacency bitmask per vertex."""
        return self._adj

    @property
    def all_mask(self) -> int:
        return (1 << self._order) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self._adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._order) for v in bits(self._adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def is_complete(self) -> bool:
        return all(m.bit_count() == self._order - 1 for m in self._adj)

    def is_clique(self, mask: int) -> bool:
        return all((self._adj[v] | (1 << v)) & mask == mask for v in bits(mask))

    def is_independent(self, mask: int) -> bool:
        return all(not (self._adj[v] & mask) for v in bits(mask))

    def subgraph_edge_count(self, mask: int) -> int:
        return sum((self._adj[v] & mask).bit_count() for v in bits(mask)) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self.edge_count()})"

    # JSON edge-list interchange: {"n": int, "edges": [[u, v], ...]}

    def to_json_obj(self) -> dict:
        return {"n": self._order, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json_obj(cls, obj: object) -> "Graph":
        if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
            raise MalformedGraphInput('expected an object {"n": int, "edges": [[u, v], ...]}')
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise MalformedGraphInput("'n' must be an integer")
        try:
            return cls(n, [(int(u), int(v)) for u, v in obj["edges"]])
        except (TypeError, ValueError) as exc:
            raise MalformedGraphInput(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedGraphInput(f"invalid JSON: {exc}") from exc
        return cls.from_json_obj(obj)
