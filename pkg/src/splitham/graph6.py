"""graph6 encoding and decoding.

The payload lists the upper triangle column by column
(x(0,1), x(0,2), x(1,2), x(0,3), ...), six bits per byte, most significant
bit first, each byte offset by 63. Orders up to 62 use a one-byte header;
larger orders use ``~`` followed by an 18-bit big-endian length.
"""

from __future__ import annotations

from .errors import MalformedGraph6
from .graph import Graph, MAX_ORDER

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    return "~~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (30, 24, 18, 12, 6, 0))


def _decode_order(data: bytes) -> tuple[int, int]:
    """Return ``(n, header_length)``."""
    if not data:
        raise MalformedGraph6("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedGraph6("truncated 36-bit order header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedGraph6("truncated 18-bit order header")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def to_graph6(g: Graph) -> str:
    n = g.order
    adj = g.adj
    out = [_encode_order(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` prefix is allowed)."""
    if isinstance(text, str):
        text = text.strip()
        if text.startswith(HEADER):
            text = text[len(HEADER):]
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise MalformedGraph6("graph6 must be printable ASCII") from exc
    else:
        data = bytes(text).strip()
        if data.startswith(HEADER.encode()):
            data = data[len(HEADER):]
    for pos, c in enumerate(data):
        if not 63 <= c <= 126:
            raise MalformedGraph6(f"byte {c!r} at position {pos} outside 63..126")
    n, offset = _decode_order(data)
    if n > MAX_ORDER:
        raise MalformedGraph6(f"order {n} exceeds supported maximum {MAX_ORDER}")
    payload = data[offset:]
    total = n * (n - 1) // 2
    expected = (total + 5) // 6
    if len(payload) != expected:
        raise MalformedGraph6(
            f"order {n} needs {expected} payload bytes, found {len(payload)}"
        )
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for c in payload:
        value = c - 63
        for shift in range(5, -1, -1):
            if k >= total:
                if (value >> shift) & 1:
                    raise MalformedGraph6("nonzero padding bits")
                continue
            if (value >> shift) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph.from_masks(adj)
