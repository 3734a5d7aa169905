"""Chorded-cycle detection with explicit witnesses, plus a naive oracle."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError, _bits
from .structure import blocks, k_core_vertices

ORACLE_LIMIT = 12


@dataclass(frozen=True)
class CycleWitness:
    cycle: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]

    @property
    def chord_count(self) -> int:
        return len(self.chords)

    def to_dict(self) -> dict:
        return {"cycle": list(self.cycle), "chords": [list(c) for c in self.chords]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> CycleWitness:
        return cls(tuple(data["cycle"]), tuple(tuple(c) for c in data["chords"]))


def chords_of(g: Graph, cycle) -> tuple[tuple[int, int], ...]:
    """All edges of ``g`` joining two vertices of ``cycle`` that are not cycle edges."""
    cyc = list(cycle)
    k = len(cyc)
    on_cycle = {frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)}
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            a, b = cyc[i], cyc[j]
            if g.has_edge(a, b) and frozenset((a, b)) not in on_cycle:
                out.append((min(a, b), max(a, b)))
    return tuple(sorted(out))


def _witness(g: Graph, cycle) -> CycleWitness:
    return CycleWitness(tuple(cycle), chords_of(g, cycle))


def validate_witness(g: Graph, w: CycleWitness, min_chords: int = 1, length: int | None = None) -> list[str]:
    """Independent check of a witness; returns a list of problems (empty when valid)."""
    problems = []
    cyc = list(w.cycle)
    k = len(cyc)
    if k < 3:
        problems.append("cycle shorter than 3")
    if len(set(cyc)) != k:
        problems.append("repeated cycle vertex")
    if any(not 0 <= v < g.n for v in cyc):
        return problems + ["vertex out of range"]
    if length is not None and k != length:
        problems.append(f"cycle length {k} != {length}")
    for i in range(k):
        a, b = cyc[i], cyc[(i + 1) % k]
        if not g.has_edge(a, b):
            problems.append(f"cycle step {a}-{b} is not an edge")
    steps = {frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)}
    seen = set()
    for a, b in w.chords:
        if a not in cyc or b not in cyc:
            problems.append(f"chord {a}-{b} leaves the cycle")
        elif not g.has_edge(a, b):
            problems.append(f"chord {a}-{b} is not an edge")
        elif frozenset((a, b)) in steps:
            problems.append(f"chord {a}-{b} is a cycle edge")
        if frozenset((a, b)) in seen:
            problems.append(f"chord {a}-{b} listed twice")
        seen.add(frozenset((a, b)))
    if len(w.chords) < min_chords:
        problems.append(f"{len(w.chords)} chords < {min_chords}")
    return problems


def _two_disjoint_paths(g: Graph, x: int, y: int, skip: tuple[int, int]) -> list[list[int]] | None:
    """Two internally vertex-disjoint x-y paths avoiding edge ``skip`` (unit-capacity flow)."""
    # node 2v = v_in, 2v+1 = v_out
    cap: dict[tuple[int, int], int] = {}
    out_arcs: dict[int, list[int]] = {}

    def arc(a: int, b: int, c: int) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        out_arcs.setdefault(a, []).append(b)
        out_arcs.setdefault(b, []).append(a)

    big = 2
    for v in range(g.n):
        arc(2 * v, 2 * v + 1, big if v in (x, y) else 1)
    sk = frozenset(skip)
    for a, b in g.edges():
        if frozenset((a, b)) == sk:
            continue
        arc(2 * a + 1, 2 * b, 1)
        arc(2 * b + 1, 2 * a, 1)
    src, dst = 2 * x + 1, 2 * y
    flow = 0
    while flow < 2:
        prev = {src: None}
        q = deque([src])
        while q and dst not in prev:
            u = q.popleft()
            for w in out_arcs.get(u, ()):
                if w not in prev and cap[(u, w)] > 0:
                    prev[w] = u
                    q.append(w)
        if dst not in prev:
            return None
        w = dst
        while prev[w] is not None:
            u = prev[w]
            cap[(u, w)] -= 1
            cap[(w, u)] += 1
            w = u
        flow += 1
    # decompose: follow saturated original arcs u_out -> w_in
    used = {}
    for a, b in g.edges():
        if frozenset((a, b)) == sk:
            continue
        for u, w in ((a, b), (b, a)):
            # flow on u_out -> w_in shows up as residual capacity on the reverse arc
            if cap[(2 * w, 2 * u + 1)] > 0:
                used.setdefault(u, []).append(w)
    # cancel opposite flows on the same undirected edge
    for u in list(used):
        for w in list(used[u]):
            if u in used.get(w, []):
                used[u].remove(w)
                used[w].remove(u)
    paths = []
    for start in list(used.get(x, [])):
        p = [x, start]
        while p[-1] != y:
            nxt = used[p[-1]].pop()
            p.append(nxt)
        paths.append(p)
    return paths if len(paths) == 2 else None


def has_chorded_cycle(g: Graph) -> CycleWitness | None:
    """Witness cycle with at least one chord, or None.

    Edge xy is a chord of some cycle iff x and y still lie on a common
    cycle after deleting xy; two internally disjoint x-y paths in G - xy
    close up to such a cycle.
    """
    for block in blocks(g).blocks:
        nb = len(block)
        if nb < 4:
            continue
        mask = sum(1 << v for v in block)
        be = sum((g.adj[v] & mask).bit_count() for v in block) // 2
        if be <= nb:
            continue  # a block that is a single cycle has no chords
        sub = g.induced(sorted(block))
        verts = sorted(block)
        for x, y in sub.edges():
            paths = _two_disjoint_paths(sub, x, y, (x, y))
            if paths is not None:
                p1, p2 = paths
                cyc = p1 + p2[-2:0:-1]
                return _witness(g, [verts[v] for v in cyc])
    return None


def find_s_chorded_k_cycle(g: Graph, s: int, k: int) -> CycleWitness | None:
    """A k-cycle spanning at least k + s induced edges, or None.

    Backtracking from the smallest cycle vertex; prunes on BFS distance back
    to the root and on an upper bound for the chords still reachable.
    """
    if s < 0 or k < 3:
        raise ValueError("need s >= 0 and k >= 3")
    alive = k_core_vertices(g, 2)
    if len(alive) < k:
        return None
    core = g.induced(alive)
    adj = core.adj
    n = core.n
    need = k + s
    for root in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (root + 1)) - 1)
        # BFS distance to root inside vertices >= root
        dist = [-1] * n
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            for w in _bits(adj[u] & (allowed | (1 << root))):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if sum(1 for d in dist if d >= 0) < k:
            continue
        maxdeg = max(adj[v].bit_count() for v in range(n) if dist[v] >= 0)
        path = [root]
        found = _extend(adj, path, 1 << root, 0, allowed, dist, k, need, maxdeg)
        if found is not None:
            return _witness(g, [alive[v] for v in found])
    return None


def _extend(adj, path, pmask, induced, allowed, dist, k, need, maxdeg):
    p = len(path)
    last = path[-1]
    if p == k:
        root = path[0]
        # ``induced`` counts every edge among the path vertices, closing edge included
        if adj[last] >> root & 1 and path[1] < last and induced >= need:
            return list(path)
        return None
    remaining = k - p
    # best case: each new vertex adds min(maxdeg, current size) edges
    bound = induced
    for i in range(remaining):
        bound += min(maxdeg, p + i)
    if bound < need:
        return None
    for w in _bits(adj[last] & allowed & ~pmask):
        if dist[w] > remaining:
            continue
        if remaining == 1 and w < path[1]:
            continue
        path.append(w)
        r = _extend(adj, path, pmask | (1 << w), induced + (adj[w] & pmask).bit_count(),
                    allowed, dist, k, need, maxdeg)
        path.pop()
        if r is not None:
            return r
    return None


def has_k_minus_chorded_cycle(g: Graph, k: int) -> CycleWitness | None:
    """A (2k-3)-chorded (2k+1)-cycle, or None."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return find_s_chorded_k_cycle(g, 2 * k - 3, 2 * k + 1)


def find_s_chorded_cycle(g: Graph, s: int) -> CycleWitness | None:
    """A cycle of any length with at least ``s`` chords, or None."""
    if s <= 1:
        return has_chorded_cycle(g) if s == 1 else find_s_chorded_k_cycle(g, 0, 3) if g.m else None
    for k in range(4, g.n + 1):
        if k * (k - 3) // 2 < s:
            continue
        w = find_s_chorded_k_cycle(g, s, k)
        if w is not None:
            return w
    return None


def chorded_cycle_oracle(g: Graph, s: int, k: int | None = None) -> bool:
    """Naive check: does some cycle (of length k, if given) carry at least s chords?

    Enumerates every simple cycle once (smallest vertex first, second vertex
    smaller than the last) and counts chords directly.  No pruning.
    """
    if g.n > ORACLE_LIMIT:
        raise GraphError(f"oracle is limited to {ORACLE_LIMIT} vertices")
    for cyc in simple_cycles(g):
        if k is not None and len(cyc) != k:
            continue
        if len(chords_of(g, cyc)) >= s:
            return True
    return False


def simple_cycles(g: Graph):
    """Yield each simple cycle of ``g`` exactly once as a vertex list."""
    for root in range(g.n):
        stack = [(root, [root])]
        while stack:
            v, cyc = stack.pop()
            for w in g.neighbors(v):
                if w == root and len(cyc) >= 3 and cyc[1] < cyc[-1]:
                    yield list(cyc)
                elif w > root and w not in cyc:
                    stack.append((w, cyc + [w]))
