"""(S,I)-alternating paths and cycles, pseudo I-covers and I-covers.

A disjoint pseudo I-cover is the same thing as a choice, for every b in I, of
two distinct S-neighbours of b, such that the multigraph on S formed by these
pairs has maximum degree 2. Path components of that multigraph lift to
alternating paths and cycle components to alternating cycles. An I-cover is
the acyclic case. The searches and surgeries work on this ``Assignment``
form; the dataclasses below are the public face.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidCover
from .graph import Graph, bits
from .split import SplitPartition

Assignment = dict[int, tuple[int, int]]


@dataclass(frozen=True)
class AlternatingPath:
    """Vertex sequence a1 b1 a2 ... a_{t+1}; S at even indices, I at odd."""

    sequence: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.sequence[0], self.sequence[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.sequence[1:-1]

    @property
    def length(self) -> int:
        return len(self.sequence) - 1

    def s_vertices(self) -> tuple[int, ...]:
        return self.sequence[0::2]

    def i_vertices(self) -> tuple[int, ...]:
        return self.sequence[1::2]


@dataclass(frozen=True)
class AlternatingCycle:
    """Cyclic sequence a1 b1 ... ak bk (k >= 2); the closing edge bk-a1 is implicit."""

    sequence: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.sequence)

    def s_vertices(self) -> tuple[int, ...]:
        return self.sequence[0::2]

    def i_vertices(self) -> tuple[int, ...]:
        return self.sequence[1::2]


@dataclass(frozen=True)
class PseudoICover:
    paths: tuple[AlternatingPath, ...] = ()
    cycles: tuple[AlternatingCycle, ...] = ()

    def to_json_obj(self) -> list[dict]:
        return [{"kind": "path", "vertices": list(q.sequence)} for q in self.paths] + [
            {"kind": "cycle", "vertices": list(c.sequence)} for c in self.cycles
        ]


@dataclass(frozen=True)
class ICover:
    paths: tuple[AlternatingPath, ...] = field(default=())

    def to_json_obj(self) -> list[dict]:
        return [{"kind": "path", "vertices": list(q.sequence)} for q in self.paths]

    def as_pseudo(self) -> PseudoICover:
        return PseudoICover(self.paths, ())


# -- validation -------------------------------------------------------------


def _path_problems(g: Graph, p: SplitPartition, seq: tuple[int, ...], label: str) -> list[str]:
    S, I = p.s_mask, p.i_mask
    out = []
    if len(seq) < 3 or len(seq) % 2 == 0:
        return [f"{label}: needs an odd number >= 3 of vertices, has {len(seq)}"]
    if len(set(seq)) != len(seq):
        out.append(f"{label}: repeated vertex")
    for pos, v in enumerate(seq):
        if not 0 <= v < g.order:
            return [f"{label}: vertex {v} out of range"]
        side = S if pos % 2 == 0 else I
        if not (side >> v) & 1:
            out.append(f"{label}: vertex {v} at position {pos} is on the wrong side")
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            out.append(f"{label}: {a}-{b} is not an edge")
    return out


def _cycle_problems(g: Graph, p: SplitPartition, seq: tuple[int, ...], label: str) -> list[str]:
    S, I = p.s_mask, p.i_mask
    out = []
    if len(seq) < 4 or len(seq) % 2:
        return [f"{label}: needs an even number >= 4 of vertices, has {len(seq)}"]
    if len(set(seq)) != len(seq):
        out.append(f"{label}: repeated vertex")
    for pos, v in enumerate(seq):
        if not 0 <= v < g.order:
            return [f"{label}: vertex {v} out of range"]
        side = S if pos % 2 == 0 else I
        if not (side >> v) & 1:
            out.append(f"{label}: vertex {v} at position {pos} is on the wrong side")
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if not g.has_edge(a, b):
            out.append(f"{label}: {a}-{b} is not an edge")
    return out


def pseudo_cover_problems(g: Graph, p: SplitPartition, q: PseudoICover) -> list[str]:
    out: list[str] = []
    covered = 0
    used = 0
    for k, path in enumerate(q.paths):
        out += _path_problems(g, p, path.sequence, f"path {k}")
        for v in path.sequence:
            if (used >> v) & 1:
                out.append(f"path {k}: vertex {v} shared with another element")
            used |= 1 << v
        for v in path.interior:
            covered |= 1 << v
    for k, cyc in enumerate(q.cycles):
        out += _cycle_problems(g, p, cyc.sequence, f"cycle {k}")
        for v in cyc.sequence:
            if (used >> v) & 1:
                out.append(f"cycle {k}: vertex {v} shared with another element")
            used |= 1 << v
            covered |= 1 << v
    missing = p.i_mask & ~covered
    if missing:
        out.append(f"I-vertices not covered: {list(bits(missing))}")
    return out


def icover_problems(g: Graph, p: SplitPartition, c: ICover) -> list[str]:
    return pseudo_cover_problems(g, p, c.as_pseudo())


def check_pseudo_icover(g: Graph, p: SplitPartition, q: PseudoICover) -> None:
    problems = pseudo_cover_problems(g, p, q)
    if problems:
        raise InvalidCover("; ".join(problems))


def check_icover(g: Graph, p: SplitPartition, c: ICover) -> None:
    problems = icover_problems(g, p, c)
    if problems:
        raise InvalidCover("; ".join(problems))


# -- statistics -------------------------------------------------------------


def cover_stats(c: ICover | PseudoICover) -> dict:
    """h (or h1, h2), sorted path lengths, End and Inn as sorted lists."""
    paths = c.paths
    ends = sorted({v for q in paths for v in q.ends})
    inn = sorted({v for q in paths for v in q.interior[1::2]})
    stats = {
        "lengths": sorted((q.length for q in paths), reverse=True),
        "End": ends,
        "Inn": inn,
    }
    if isinstance(c, PseudoICover):
        stats["h1"] = len(paths)
        stats["h2"] = len(c.cycles)
        stats["cycle_lengths"] = sorted((cy.length for cy in c.cycles), reverse=True)
    else:
        stats["h"] = len(paths)
    return stats


def inn_mask(c: ICover) -> int:
    m = 0
    for q in c.paths:
        for v in q.interior[1::2]:
            m |= 1 << v
    return m


# -- assignment form ---------------------------------------------------------


def _pair(x: int, y: int) -> tuple[int, int]:
    return (x, y) if x < y else (y, x)


def cover_to_assignment(c: ICover | PseudoICover) -> Assignment:
    assign: Assignment = {}
    for q in c.paths:
        seq = q.sequence
        for k in range(1, len(seq), 2):
            assign[seq[k]] = _pair(seq[k - 1], seq[k + 1])
    for cyc in getattr(c, "cycles", ()):
        seq = cyc.sequence
        m = len(seq)
        for k in range(1, m, 2):
            assign[seq[k]] = _pair(seq[k - 1], seq[(k + 1) % m])
    return assign


def _incidence(assign: Assignment) -> dict[int, list[tuple[int, int]]]:
    inc: dict[int, list[tuple[int, int]]] = {}
    for b in sorted(assign):
        x, y = assign[b]
        inc.setdefault(x, []).append((b, y))
        inc.setdefault(y, []).append((b, x))
    return inc


def is_linear_forest(assign: Assignment, allow_cycles: bool = False) -> bool:
    """Degree <= 2 on S and (unless ``allow_cycles``) no cycle, 2-cycles included."""
    inc = _incidence(assign)
    if any(len(v) > 2 for v in inc.values()):
        return False
    if allow_cycles:
        return True
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for x, y in assign.values():
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
    return True


def _normal_cycle(seq: list[int]) -> tuple[int, ...]:
    s_pos = min(range(0, len(seq), 2), key=lambda k: seq[k])
    rot = seq[s_pos:] + seq[:s_pos]
    rev = [rot[0]] + rot[1:][::-1]
    return tuple(rot if rot[1] <= rev[1] else rev)


def assignment_to_cover(assign: Assignment) -> PseudoICover:
    """Lift an assignment (max degree 2) to a normalised pseudo I-cover.

    Paths start at their smaller endpoint and are sorted by first vertex;
    cycles start at their smallest S-vertex and continue towards the smaller
    adjacent I-vertex.
    """
    inc = _incidence(assign)
    if any(len(v) > 2 for v in inc.values()):
        raise InvalidCover("some S-vertex is paired more than twice")
    used_b: set[int] = set()
    paths = []
    for start in sorted(inc):
        if len(inc[start]) != 1 or any(b in used_b for b, _ in inc[start]):
            continue
        seq = [start]
        cur = start
        while True:
            nxt = [(b, w) for b, w in inc[cur] if b not in used_b]
            if not nxt:
                break
            b, w = nxt[0]
            used_b.add(b)
            seq += [b, w]
            cur = w
        if seq[-1] < seq[0]:
            seq.reverse()
        paths.append(AlternatingPath(tuple(seq)))
    cycles = []
    for start in sorted(inc):
        free = [(b, w) for b, w in inc[start] if b not in used_b]
        if not free:
            continue
        seq = [start]
        cur = start
        while True:
            nxt = [(b, w) for b, w in inc[cur] if b not in used_b]
            if not nxt:
                break
            b, w = min(nxt)
            used_b.add(b)
            if w == start:
                seq.append(b)
                break
            seq += [b, w]
            cur = w
        cycles.append(AlternatingCycle(_normal_cycle(seq)))
    paths.sort(key=lambda q: q.sequence)
    cycles.sort(key=lambda c: c.sequence)
    return PseudoICover(tuple(paths), tuple(cycles))


def assignment_to_icover(assign: Assignment) -> ICover:
    q = assignment_to_cover(assign)
    if q.cycles:
        raise InvalidCover("assignment contains a cycle")
    return ICover(q.paths)


def normalize(c: ICover | PseudoICover) -> ICover | PseudoICover:
    q = assignment_to_cover(cover_to_assignment(c))
    return ICover(q.paths) if isinstance(c, ICover) else q


def length_key(c: ICover) -> tuple[int, int, int]:
    """Larger is better: (h, -t1, -#paths of length t1)."""
    lengths = [q.length for q in c.paths]
    if not lengths:
        return (0, 0, 0)
    t1 = max(lengths)
    return (len(lengths), -t1, -lengths.count(t1))
