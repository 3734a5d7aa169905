"""Simple undirected graphs stored as rows of neighbor bitmasks."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, loops, bad partitions)."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[i]`` is an integer whose bit ``j`` is set iff ``ij`` is an edge.
    Python integers are arbitrary precision, so there is no vertex cap.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {i} references a vertex outside [0, {self.n})")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in _bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` pairs with ``i < j``, sorted."""
        out = []
        for i, row in enumerate(self.adj):
            for j in _bits(row >> (i + 1)):
                out.append((i, i + 1 + j))
        return out

    def is_isolate_free(self) -> bool:
        return all(self.adj)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return component_mask(self, 0) == (1 << self.n) - 1

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            mask = component_mask(self, v)
            seen |= mask
            comps.append(list(_bits(mask)))
        return comps

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1.0
        return a

    def add_edge(self, u: int, v: int) -> Graph:
        return build_graph(self.n, self.edges() + [(u, v)])

    def remove_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise GraphError(f"{u}{v} is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled in the order given."""
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[a], index[b]) for a, b in self.edges() if a in index and b in index]
        return build_graph(len(vs), edges)

    def delete_vertex(self, v: int) -> Graph:
        return self.induced(w for w in range(self.n) if w != v)

    def without_isolates(self) -> Graph:
        return self.induced(v for v in range(self.n) if self.adj[v])

    def permute(self, perm: Sequence[int]) -> Graph:
        """Relabel vertex ``i`` as ``perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("not a permutation")
        return build_graph(self.n, [(perm[i], perm[j]) for i, j in self.edges()])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def component_mask(g: Graph, v: int) -> int:
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for w in _bits(frontier):
            nxt |= g.adj[w]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices from an edge list; duplicates are merged."""
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    adj = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(row << shift for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``."""
    g_all = (1 << g.n) - 1
    h_all = ((1 << h.n) - 1) << g.n
    adj = tuple(row | h_all for row in g.adj) + tuple((row << g.n) | g_all for row in h.adj)
    return Graph(g.n + h.n, adj)


def copies(k: int, g: Graph) -> Graph:
    out = empty_graph(0)
    for _ in range(k):
        out = disjoint_union(out, g)
    return out
