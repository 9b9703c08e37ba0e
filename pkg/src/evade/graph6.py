"""graph6 codec (bit-exact with nauty's format)."""
from __future__ import annotations

from .graph import FiniteGraph


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63] + [(n >> s) & 63 for s in (12, 6, 0)]
    if n <= 68719476735:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise Graph6Error(f"graph too large for graph6: n={n}")


def _decode_n(data: list[int]) -> tuple[int, int]:
    if not data:
        raise Graph6Error("malformed length: empty input")
    if data[0] != 63:
        return data[0], 1
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise Graph6Error("malformed length: truncated 8-byte size field")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        return n, 8
    if len(data) < 4:
        raise Graph6Error("malformed length: truncated 4-byte size field")
    n = 0
    for x in data[1:4]:
        n = (n << 6) | x
    return n, 4


def encode(g: FiniteGraph) -> str:
    bits = [
        1 if (i, j) in g.edges else 0
        for j in range(1, g.n)
        for i in range(j)
    ]
    bits += [0] * (-len(bits) % 6)
    body = [
        int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)
    ]
    return "".join(chr(x + 63) for x in _encode_n(g.n) + body)


def decode(text: str) -> FiniteGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    raw = [ord(c) for c in text]
    for pos, c in enumerate(raw):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c} at position {pos} is outside the printable range 63-126")
    data = [c - 63 for c in raw]
    n, offset = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[offset:]
    if len(body) != need:
        raise Graph6Error(f"malformed length: n={n} needs {need} body bytes, got {len(body)}")
    bits = [(x >> (5 - k)) & 1 for x in body for k in range(6)]
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.add((i, j))
            k += 1
    return FiniteGraph(n, frozenset(edges))


def read_file(path) -> list[FiniteGraph]:
    with open(path) as fh:
        return [decode(line) for line in fh if line.strip()]
