"""graph6 encoding: size header, then the upper triangle packed six bits per byte.

Bits are taken column by column, (0,1), (0,2), (1,2), (0,3), ..., most
significant bit first, and every byte is offset by 63.  No ``>>graph6<<``
header is written; one is tolerated on input.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def upper_triangle_bits(g: Graph) -> list[int]:
    return [g.rows[i] >> j & 1 for j in range(1, g.n) for i in range(j)]


def write_graph6(g: Graph) -> str:
    bits = upper_triangle_bits(g)
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _encode_n(g.n) + "".join(body)


def _sextet(text: str, pos: int) -> int:
    c = ord(text[pos])
    if not 63 <= c <= 126:
        raise ParseError(f"byte {text[pos]!r} outside the graph6 range 63..126", pos)
    return c - 63


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    start = 0
    if s.startswith(HEADER):
        start = len(HEADER)
    if len(s) <= start:
        raise ParseError("empty graph6 string", start)
    pos = start
    if s[pos] == "~":
        width = 3
        if len(s) > pos + 1 and s[pos + 1] == "~":
            width = 6
            pos += 1
        pos += 1
        if len(s) < pos + width:
            raise ParseError("truncated size header", len(s))
        n = 0
        for k in range(width):
            n = n << 6 | _sextet(s, pos + k)
        pos += width
    else:
        n = _sextet(s, pos)
        pos += 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < nbytes:
        raise ParseError(f"body has {len(body)} bytes, expected {nbytes}", len(s))
    if len(body) > nbytes:
        raise ParseError("trailing bytes after graph6 body", pos + nbytes)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = _sextet(s, pos + k // 6)
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6 and _sextet(s, pos + nbytes - 1) & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("non-zero padding bits", pos + nbytes - 1)
    return Graph(n, tuple(rows))
