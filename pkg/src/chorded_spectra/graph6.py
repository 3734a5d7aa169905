"""graph6 encoding (McKay's format), bit-exact with nauty/networkx output."""

from __future__ import annotations

from .graph import Graph, GraphError, build_graph

_MAX_N = 68719476735  # 2**36 - 1


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n <= _MAX_N:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise GraphError(f"graph6 cannot encode {n} vertices")


def graph6_encode(g: Graph) -> str:
    """Encode ``g``; the upper triangle is read column by column, 6 bits per char."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits += [0] * (-len(bits) % 6)
    data = _encode_n(g.n)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        data.append(v)
    return "".join(chr(63 + d) for d in data)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphError("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= v <= 63 for v in vals):
        raise GraphError(f"invalid graph6 character in {text!r}")
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    else:
        raise GraphError(f"truncated graph6 size field in {text!r}")
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise GraphError(f"graph6 string {text!r} has wrong length for n={n}")
    bits = []
    for v in rest:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)
