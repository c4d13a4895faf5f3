"""Split graph generators: seeded random, exhaustive labelled enumeration, structured families.

Generated graphs put the clique side on vertices ``0..s-1`` and the
independent side on ``s..n-1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

from .errors import InvalidSpec, OrderCapExceeded
from .graph import Graph, bits

ENUMERATION_CAP = 12


@dataclass(frozen=True)
class GenSpec:
    """What to generate and which hypotheses a campaign filters on.

    ``n_range`` and ``s_range`` are inclusive; ``s_range=None`` means
    ``(r + 1, n)``; ``i_range`` optionally bounds the independent side.
    ``p`` is the probability of each I-S edge; with ``p_range`` set, every
    I-vertex instead draws its own probability uniformly from that range.
    ``min_order=None`` means ``2r + 7``.
    """

    mode: str = "random"
    n_range: tuple[int, int] = (13, 16)
    s_range: tuple[int, int] | None = None
    p: float = 0.5
    seed: int = 0
    r: int = 3
    count: int = 100
    min_order: int | None = None
    filters: tuple[str, ...] = ("connectivity", "freeness", "min-order")
    i_range: tuple[int, int] | None = None
    p_range: tuple[float, float] | None = None

    def threshold(self) -> int:
        return self.min_order if self.min_order is not None else 2 * self.r + 7

    def validate(self) -> None:
        if self.mode not in ("random", "exhaustive", "family"):
            raise InvalidSpec(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidSpec(f"p must lie in [0, 1], got {self.p}")
        if self.p_range is not None and not 0.0 <= self.p_range[0] <= self.p_range[1] <= 1.0:
            raise InvalidSpec(f"bad probability range {self.p_range}")
        lo, hi = self.n_range
        if lo < 1 or hi < lo:
            raise InvalidSpec(f"bad n range {self.n_range}")
        if self.s_range is not None and (self.s_range[0] < 1 or self.s_range[1] < self.s_range[0]):
            raise InvalidSpec(f"bad clique-size range {self.s_range}")
        if self.i_range is not None and (self.i_range[0] < 0 or self.i_range[1] < self.i_range[0]):
            raise InvalidSpec(f"bad independent-size range {self.i_range}")
        if self.r < 1:
            raise InvalidSpec("r must be positive")
        if self.count < 0:
            raise InvalidSpec("count must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must be a 64-bit unsigned integer")
        unknown = set(self.filters) - {"connectivity", "freeness", "min-order"}
        if unknown:
            raise InvalidSpec(f"unknown filters {sorted(unknown)}")

    def to_json_obj(self) -> dict:
        return {
            "mode": self.mode,
            "n_range": list(self.n_range),
            "s_range": None if self.s_range is None else list(self.s_range),
            "i_range": None if self.i_range is None else list(self.i_range),
            "p": self.p,
            "p_range": None if self.p_range is None else list(self.p_range),
            "seed": self.seed,
            "r": self.r,
            "count": self.count,
            "min_order": self.min_order,
            "filters": list(self.filters),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GenSpec":
        kwargs = dict(obj)
        for key in ("n_range", "s_range", "i_range", "p_range"):
            if kwargs.get(key) is not None:
                kwargs[key] = tuple(kwargs[key])
        if "filters" in kwargs:
            kwargs["filters"] = tuple(kwargs["filters"])
        try:
            spec = cls(**kwargs)
        except TypeError as exc:
            raise InvalidSpec(str(exc)) from exc
        spec.validate()
        return spec


def split_graph_from_rows(s: int, rows: list[int]) -> Graph:
    """Clique on 0..s-1 plus one independent vertex per row (a bitmask over the clique)."""
    clique = (1 << s) - 1
    adj = [clique ^ (1 << v) for v in range(s)] + [0] * len(rows)
    for k, row in enumerate(rows):
        b = s + k
        adj[b] = row
        for v in bits(row):
            adj[v] |= 1 << b
    return Graph.from_masks(adj)


def _clique_bounds(spec: GenSpec, n: int) -> tuple[int, int]:
    lo, hi = spec.s_range if spec.s_range is not None else (spec.r + 1, n)
    if spec.i_range is not None:
        lo = max(lo, n - spec.i_range[1])
        hi = min(hi, n - spec.i_range[0])
    return max(lo, 1), min(hi, n)


def gen_random_split(spec: GenSpec) -> Iterator[Graph]:
    """``spec.count`` random split graphs; the stream is a pure function of the spec.

    Each I-vertex picks every clique vertex with probability ``p``; if that
    leaves it with fewer than ``r`` neighbours, extra clique vertices are
    drawn uniformly until it has ``r`` (or all of them).
    """
    spec.validate()
    if spec.mode != "random":
        raise InvalidSpec("gen_random_split needs mode='random'")
    lo, hi = spec.n_range
    for n in range(lo, hi + 1):
        s_lo, s_hi = _clique_bounds(spec, n)
        if s_lo > s_hi:
            raise InvalidSpec(f"no admissible clique size for n={n}")
    rng = random.Random(spec.seed)
    for _ in range(spec.count):
        n = rng.randint(lo, hi)
        s_lo, s_hi = _clique_bounds(spec, n)
        s = rng.randint(s_lo, s_hi)
        rows = []
        for _ in range(n - s):
            p = rng.uniform(*spec.p_range) if spec.p_range is not None else spec.p
            row = [v for v in range(s) if rng.random() < p]
            if len(row) < spec.r:
                rest = [v for v in range(s) if v not in row]
                row += rng.sample(rest, min(spec.r - len(row), len(rest)))
            mask = 0
            for v in row:
                mask |= 1 << v
            rows.append(mask)
        yield split_graph_from_rows(s, rows)


def gen_family_complete_split(s: int, i_count: int) -> Graph:
    """K_s plus ``i_count`` independent vertices joined to all of the clique."""
    if s < 4 or not 0 <= i_count <= 3:
        raise InvalidSpec("need s >= 4 and 0 <= i_count <= 3")
    return split_graph_from_rows(s, [(1 << s) - 1] * i_count)


# -- exhaustive enumeration --------------------------------------------------


def _row_string_value(mask: int, s: int) -> int:
    """Value of the row read as a bit string with clique vertex 0 most significant."""
    out = 0
    for v in range(s):
        out = (out << 1) | ((mask >> v) & 1)
    return out


RowPrune = Callable[[int, list[int]], bool]


def enumerate_split_labeled(
    n: int,
    s: int,
    *,
    min_row_degree: int = 0,
    max_col_degree: int | None = None,
    prune: RowPrune | None = None,
    cap: int = ENUMERATION_CAP,
) -> Iterator[Graph]:
    """Every split graph with clique side 0..s-1 and n-s independent vertices, up to symmetry.

    The I-to-S incidence matrix is generated with rows in non-increasing
    order and columns in non-increasing order (both read as bit strings).
    Every 0/1 matrix can be brought to this doubly ordered form by row and
    column permutations, so each isomorphism class still appears at least
    once; duplicates are possible.

    ``min_row_degree`` and ``max_col_degree`` drop rows or columns outside
    the given degree bounds, and ``prune(s, rows)`` may reject a partial
    matrix; it must be hereditary (a rejected prefix has no accepted
    extension).
    """
    if n > cap:
        raise OrderCapExceeded(f"enumeration capped at n={cap}, asked for {n}")
    if not 1 <= s <= n:
        raise InvalidSpec(f"need 1 <= s <= n, got s={s}, n={n}")
    k = n - s
    cands = [m for m in range(1 << s) if m.bit_count() >= min_row_degree]
    cands.sort(key=lambda m: -_row_string_value(m, s))
    adjacent_cols = (1 << (s - 1)) - 1 if s > 1 else 0
    col_cap = max_col_degree if max_col_degree is not None else k

    rows: list[int] = []
    col_deg = [0] * s

    def rec(start: int, tied: int) -> Iterator[Graph]:
        if len(rows) == k:
            yield split_graph_from_rows(s, list(rows))
            return
        for idx in range(start, len(cands)):
            row = cands[idx]
            # columns j, j+1 tied so far must not flip to col j < col j+1
            if (~row) & (row >> 1) & tied:
                continue
            if any(col_deg[v] >= col_cap for v in bits(row)):
                continue
            rows.append(row)
            if prune is None or not prune(s, rows):
                for v in bits(row):
                    col_deg[v] += 1
                yield from rec(idx, tied & ~(row & ~(row >> 1)))
                for v in bits(row):
                    col_deg[v] -= 1
            rows.pop()

    yield from rec(0, adjacent_cols)


def star_free_rows(s: int, rows: list[int]) -> bool:
    """True iff the split graph (K_s, rows) is {K_{1,4}, K_{1,4}+e}-free.

    Centres of such stars lie in the clique. For a clique vertex u with
    independent neighbourhood A: |A| >= 4 gives K_{1,4}; if |A| = 3 any other
    clique vertex meeting A at most once completes one of the two stars; for
    a pair {a, b} in A, two other clique vertices missing both complete a
    K_{1,4}+e.
    """
    full = (1 << s) - 1
    for u in range(s):
        A = [r for r in rows if (r >> u) & 1]
        if len(A) >= 4:
            return False
        others = full & ~(1 << u)
        if len(A) == 3:
            for w in bits(others):
                if sum((r >> w) & 1 for r in A) <= 1:
                    return False
        for a, b in combinations(A, 2):
            if (others & ~(a | b)).bit_count() >= 2:
                return False
    return True


def enumerate_qualifying_candidates(n: int, r: int = 3) -> Iterator[Graph]:
    """Labelled enumeration restricted to rows of degree >= r and star-free prefixes.

    Both restrictions are necessary conditions for r-connected
    {K_{1,r+1}, K_{1,r+1}+e}-free split graphs (for r = 3 the freeness test
    is exact on every prefix), so no qualifying graph is lost.
    """
    prune = (lambda s, rows: not star_free_rows(s, rows)) if r == 3 else None
    for s in range(1, n + 1):
        yield from enumerate_split_labeled(
            n, s, min_row_degree=min(r, s), max_col_degree=r, prune=prune
        )
