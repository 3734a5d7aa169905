"""Structural decompositions: k-cores and blocks (biconnected components)."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, _bits


def k_core(g: Graph, k: int) -> Graph:
    """Induced subgraph left after repeatedly deleting vertices of degree < k.

    The result keeps the surviving vertices in their original order and
    is empty (``n == 0``) when everything peels away.
    """
    return g.induced(k_core_vertices(g, k))


def k_core_vertices(g: Graph, k: int) -> list[int]:
    if k < 0:
        raise ValueError("k must be nonnegative")
    alive = (1 << g.n) - 1
    deg = g.degrees()
    stack = [v for v in range(g.n) if deg[v] < k]
    dead = 0
    for v in stack:
        dead |= 1 << v
    while stack:
        v = stack.pop()
        alive &= ~(1 << v)
        for w in _bits(g.adj[v] & alive):
            deg[w] -= 1
            if deg[w] < k and not dead >> w & 1:
                dead |= 1 << w
                stack.append(w)
    return list(_bits(alive))


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: list[frozenset[int]]
    cut_vertices: frozenset[int]


def blocks(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan biconnected components; bridges come out as 2-vertex blocks.

    Isolated vertices belong to no block.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    found: list[frozenset[int]] = []
    cuts: set[int] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        # frames: (vertex, parent, iterator over neighbors)
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                comp: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (parent, v):
                        break
                found.append(frozenset(comp))
        if root_children > 1:
            cuts.add(root)
    return BlockDecomposition(found, frozenset(cuts))


def same_cycle_block(g: Graph, x: int, y: int) -> bool:
    """True iff some block with at least three vertices contains both x and y."""
    return any(len(b) >= 3 and x in b and y in b for b in blocks(g).blocks)
