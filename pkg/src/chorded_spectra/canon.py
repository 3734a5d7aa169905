"""Canonical labelling by individualization-refinement.

The canonical form of a graph is the lexicographically smallest row-major
upper-triangle adjacency bit string among all vertex orderings that the
search tree reaches.  Every tree node is an ordered equitable partition
obtained from the unit partition by individualizing vertices and refining
by neighbor counts; since refinement is isomorphism-invariant, isomorphic
graphs produce the same set of leaf certificates.  Automorphisms found
along the way prune sibling subtrees, which keeps highly symmetric graphs
(stars, complete bipartite graphs, books) cheap.

Practical limit: graphs of up to a few dozen vertices; the worst cases are
strongly regular graphs where refinement cannot split the unit partition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, _bits


@dataclass(frozen=True)
class Canon:
    order: tuple[int, ...]  # order[i] = original vertex placed at position i
    certificate: int
    generators: tuple[tuple[int, ...], ...]  # automorphisms found during search

    @property
    def labeling(self) -> list[int]:
        lab = [0] * len(self.order)
        for pos, v in enumerate(self.order):
            lab[v] = pos
        return lab


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    i = 0
    while i < len(cells):
        if all(len(c) == 1 for c in cells):
            return cells
        wmask = 0
        for v in cells[i]:
            wmask |= 1 << v
        out: list[list[int]] = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[int, list[int]] = {}
            for v in c:
                groups.setdefault((adj[v] & wmask).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                for key in sorted(groups):
                    out.append(groups[key])
        cells = out
        i = 0 if split else i + 1
    return cells


def _certificate(adj: tuple[int, ...], order: list[int]) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    for i, v in enumerate(order):
        row = 0
        for w in _bits(adj[v]):
            p = pos[w]
            if p > i:
                row |= 1 << (n - 1 - p)
        cert = (cert << (n - 1 - i)) | row
    return cert


def _orbit_roots(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for a, b in enumerate(g):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


class _Search:
    def __init__(self, g: Graph) -> None:
        self.adj = g.adj
        self.n = g.n
        self.first: tuple[list[int], int] | None = None
        self.best: tuple[list[int], int] | None = None
        self.gens: list[tuple[int, ...]] = []

    def run(self, cells: list[list[int]]) -> None:
        self._visit(_refine(self.adj, cells), [], on_first_path=True)

    def _leaf(self, order: list[int]) -> int | None:
        """Process a leaf; return the divergence level to jump back to, if any."""
        cert = _certificate(self.adj, order)
        if self.first is None:
            self.first = self.best = (order, cert)
            return None
        first_order, first_cert = self.first
        if cert == first_cert:
            self._add_automorphism(first_order, order)
            return -1
        best_order, best_cert = self.best
        if cert == best_cert:
            self._add_automorphism(best_order, order)
        elif cert < best_cert:
            self.best = (order, cert)
        return None

    def _add_automorphism(self, a: list[int], b: list[int]) -> None:
        perm = [0] * self.n
        for x, y in zip(a, b):
            perm[x] = y
        t = tuple(perm)
        if t != tuple(range(self.n)):
            self.gens.append(t)

    def _visit(self, cells: list[list[int]], path: list[int], on_first_path: bool) -> bool:
        """DFS over the search tree.

        Returns True when a leaf equivalent to the first leaf was found in a
        subtree that has already left the first path; the caller unwinds to
        the node where the divergence happened.
        """
        if len(cells) == self.n:
            return self._leaf([c[0] for c in cells]) == -1
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[t]
        explored: list[int] = []
        for idx, v in enumerate(target):
            if explored:
                stab = [g for g in self.gens if all(g[p] == p for p in path)]
                if stab:
                    roots = _orbit_roots(self.n, stab)
                    if any(roots[v] == roots[w] for w in explored):
                        continue
            child = cells[:t] + [[v], [w for w in target if w != v]] + cells[t + 1 :]
            child_first = on_first_path and idx == 0
            jumped = self._visit(_refine(self.adj, child), path + [v], child_first)
            explored.append(v)
            if jumped and not on_first_path:
                # keep unwinding until we reach the node that lies on the first path
                return True
        return False


def canonical(g: Graph, colors: list[int] | None = None) -> Canon:
    """Canonical ordering, certificate and automorphism generators of ``g``.

    ``colors`` (optional) restricts the search to color-preserving relabellings;
    vertices with smaller color values come first.
    """
    if g.n == 0:
        return Canon((), 0, ())
    if colors is None:
        cells = [list(range(g.n))]
    else:
        by_color: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            by_color.setdefault(c, []).append(v)
        cells = [by_color[c] for c in sorted(by_color)]
    s = _Search(g)
    s.run(cells)
    order, cert = s.best
    return Canon(tuple(order), cert, tuple(s.gens))


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant byte string: vertex count followed by packed adjacency bits."""
    c = canonical(g)
    nbits = g.n * (g.n - 1) // 2
    return g.n.to_bytes(2, "big") + c.certificate.to_bytes((nbits + 7) // 8, "big")


def canonical_graph(g: Graph) -> Graph:
    return g.permute(canonical(g).labeling)


def automorphism_orbits(g: Graph) -> list[int]:
    """Orbit representative (smallest vertex) for every vertex of ``g``."""
    return _orbit_roots(g.n, list(canonical(g).generators))
