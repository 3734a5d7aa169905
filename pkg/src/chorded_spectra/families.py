"""Named graph families with a fixed vertex order.

Ordering convention for every constructor: hub/clique vertices first, then
matching-edge vertices in consecutive pairs, then the independent side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, GraphError, build_graph, copies, disjoint_union, empty_graph, join


def complete(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(t: int) -> Graph:
    """K_{1,t} with the center at vertex 0."""
    return join(complete(1), empty_graph(t))


def complete_multipartite(*parts: int) -> Graph:
    if any(p < 1 for p in parts):
        raise GraphError("part sizes must be positive")
    g = empty_graph(0)
    for p in parts:
        g = join(g, empty_graph(p))
    return g


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def book_star(t: int, s: int) -> Graph:
    """K_1 v (t K_2 u s K_1): hub, then t matched pairs, then s leaves."""
    if t < 0 or s < 0:
        raise GraphError("t and s must be nonnegative")
    return join(complete(1), disjoint_union(copies(t, complete(2)), empty_graph(s)))


def clique_join(k: int, t: int) -> Graph:
    """K_k v t K_1."""
    if k < 1 or t < 0:
        raise GraphError("clique_join needs k >= 1 and t >= 0")
    return join(complete(k), empty_graph(t))


def clique_join_size_count(k: int, m: int) -> int:
    """Independent-side size t with |E(K_k v tK_1)| = m, i.e. t = m/k - (k-1)/2."""
    t = Fraction(m, k) - Fraction(k - 1, 2)
    if t.denominator != 1 or t <= 0:
        raise GraphError(f"m/k - (k-1)/2 = {t} is not a positive integer for k={k}, m={m}")
    return int(t)


def k_chorded_extremal(k: int, m: int) -> Graph:
    return clique_join(k, clique_join_size_count(k, m))


def gnks(n: int, k: int, s: int) -> Graph:
    """(K_{k-2s} u (n-k+s) K_1) v K_s, the Erdos-Gallai path extremal graph.

    Order: the K_s hub first, then the K_{k-2s} clique, then the isolated side.
    """
    if not (k > 2 * s > 0) or n < k:
        raise GraphError(f"gnks needs k > 2s > 0 and n >= k, got n={n}, k={k}, s={s}")
    return join(complete(s), disjoint_union(complete(k - 2 * s), empty_graph(n - k + s)))


def theorem12_extremal(m: int) -> Graph:
    """G_m = K_1 v (t K_2 u (m-3t) K_1) with t = floor(m/3), for 4 <= m <= 8."""
    if not 4 <= m <= 8:
        raise GraphError("G_m is defined for 4 <= m <= 8")
    t = m // 3
    return book_star(t, m - 3 * t)


def sk4() -> Graph:
    """K_4 with edge 23 subdivided by vertex 4."""
    return build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)])


def k1_join_p4() -> Graph:
    """Hub 0 joined to the path 1-2-3-4."""
    return join(complete(1), path(4))


# Transcribed from the tikz drawings.  In every fixture vertex 0 is the
# drawing's (0,0) and vertices 1, 2 are (-1,1), (-1,-1), closing the
# triangle on the left; the remaining indices follow the comment.
FIXTURES: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    # 3=(1,1) 4=(1,-1) 5=(1,0) 6=(2,0)
    "H1": (7, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 6), (6, 5), (5, 0), (0, 4), (4, 6))),
    # 3=(1,1) 4=(1,-1) 5=(2,1) 6=(2,-1)
    "H2": (7, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 5), (5, 4), (4, 0), (3, 6), (6, 4))),
    # 3=(1,1) 4=(1,-1) 5=(2,0)
    "H3": (6, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 5), (5, 4), (4, 0))),
    # 3=(1,1) 4=(2,0.5) 5=(2,-0.5) 6=(1,-1)
    "F1": (7, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 0))),
    # F1 plus 7=(0,1)
    "F2": (8, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 7))),
    # 3=(0.6,1) 4=(1.5,1) 5=(2.1,0) 6=(1.5,-1) 7=(0.6,-1)
    "F3": (8, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0))),
}


def fixture(name: str) -> Graph:
    try:
        n, edges = FIXTURES[name]
    except KeyError:
        raise GraphError(f"unknown fixture {name!r}; expected one of {sorted(FIXTURES)}") from None
    return build_graph(n, edges)


_BUILDERS = {
    "star": star,
    "complete": complete,
    "path": path,
    "cycle": cycle,
    "complete_bipartite": complete_bipartite,
    "complete_multipartite": complete_multipartite,
    "book_star": book_star,
    "clique_join": clique_join,
    "k_chorded_extremal": k_chorded_extremal,
    "gnks": gnks,
    "theorem12_extremal": theorem12_extremal,
    "sk4": sk4,
    "k1_join_p4": k1_join_p4,
}

FAMILY_NAMES = tuple(sorted(_BUILDERS)) + ("fixture",)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple = field(default=())

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse the ``name:p1,p2,...`` grammar, e.g. ``star:9`` or ``fixture:H1``."""
        name, _, rest = text.partition(":")
        name = name.strip()
        if name == "fixture":
            return cls(name, (rest.strip(),))
        params = tuple(int(p) for p in rest.split(",") if p.strip()) if rest else ()
        return cls(name, params)

    def __str__(self) -> str:
        return self.name + (":" + ",".join(map(str, self.params)) if self.params else "")


def family(spec: FamilySpec | str, *params) -> Graph:
    """Build a named family member: ``family("book_star", 1, 2)`` or ``family(FamilySpec(...))``."""
    if isinstance(spec, str):
        spec = FamilySpec(spec, params) if params else FamilySpec.parse(spec)
    if spec.name == "fixture":
        if len(spec.params) != 1:
            raise GraphError("fixture takes exactly one name")
        return fixture(str(spec.params[0]))
    try:
        builder = _BUILDERS[spec.name]
    except KeyError:
        raise GraphError(f"unknown family {spec.name!r}") from None
    try:
        return builder(*spec.params)
    except TypeError as exc:
        raise GraphError(f"bad parameters {spec.params} for {spec.name}: {exc}") from None
