"""Spectral radius, Perron vectors, quotient matrices, characteristic polynomials, thresholds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graph import Graph, GraphError

CONVERGENCE_TOL = 1e-12
RESIDUAL_TOL = 1e-9
MAX_ITERATIONS = 10**6
CHAR_POLY_LIMIT = 40


class ConvergenceError(RuntimeError):
    """Power iteration did not meet its tolerances within the iteration budget."""


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray | None
    residual: float
    iterations: int


def _power_iteration(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    """Dominant eigenpair of a connected adjacency block via iteration on A + I."""
    n = a.shape[0]
    if n == 1:
        return 0.0, np.ones(1), 0.0, 0
    shifted = a + np.eye(n)
    x = a.sum(axis=1) + 1.0
    x /= np.linalg.norm(x)
    rho_prev = math.inf
    for it in range(1, max_iter + 1):
        y = shifted @ x
        rho = float(x @ y) - 1.0
        x = y / np.linalg.norm(y)
        residual = float(np.max(np.abs(a @ x - rho * x)))
        if abs(rho - rho_prev) <= tol and residual <= RESIDUAL_TOL:
            return _polish(a, shifted, x, residual, it, max_iter)
        rho_prev = rho
    raise ConvergenceError(f"power iteration stalled after {max_iter} sweeps (residual {residual:.3e})")


def _polish(a, shifted, x, residual, it, max_iter):
    # keep sweeping while the residual still shrinks, so the vector is accurate too
    budget = min(max_iter, 2 * it + 50)
    while it < budget and residual > 1e-14:
        y = shifted @ x
        y /= np.linalg.norm(y)
        rho = float(y @ (a @ y))
        r = float(np.max(np.abs(a @ y - rho * y)))
        if r >= residual:
            break
        x, residual, it = y, r, it + 1
    return float(x @ (a @ x)), x, residual, it


def spectral_radius(g: Graph, tol: float = CONVERGENCE_TOL, max_iter: int = MAX_ITERATIONS) -> SpectralResult:
    """Largest adjacency eigenvalue, taken over connected components.

    The Perron vector is attached only when ``g`` is connected.
    """
    if g.n == 0:
        return SpectralResult(0.0, None, 0.0, 0)
    comps = g.components()
    a = g.adjacency_matrix()
    best = (-1.0, None, 0.0, 0)
    total_iters = 0
    worst_residual = 0.0
    for comp in comps:
        rho, x, residual, iters = _power_iteration(a[np.ix_(comp, comp)], tol, max_iter)
        total_iters += iters
        worst_residual = max(worst_residual, residual)
        if rho > best[0]:
            best = (rho, x, residual, iters)
    perron = None
    if len(comps) == 1:
        perron = np.abs(best[1])
        perron /= np.linalg.norm(perron)
    return SpectralResult(best[0], perron, worst_residual, total_iters)


def perron_vector(g: Graph) -> np.ndarray:
    if g.n == 0 or not g.is_connected():
        raise GraphError("the Perron vector is defined only for nonempty connected graphs")
    return spectral_radius(g).perron


def fast_rho(g: Graph) -> float:
    """Dense symmetric eigensolver estimate; used for screening large batches."""
    if g.m == 0:
        return 0.0
    return float(np.linalg.eigvalsh(g.adjacency_matrix())[-1])


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    part_sizes: tuple[int, ...]
    equitable: bool


def quotient_matrix(g: Graph, partition: list) -> QuotientMatrix:
    """b_ij = average number of neighbors in part j over the vertices of part i."""
    parts = [list(p) for p in partition]
    flat = sorted(v for p in parts for v in p)
    if flat != list(range(g.n)) or any(not p for p in parts):
        raise GraphError("partition must cover every vertex exactly once with nonempty parts")
    masks = [sum(1 << v for v in p) for p in parts]
    k = len(parts)
    b = np.zeros((k, k))
    equitable = True
    for i, p in enumerate(parts):
        for j, mask in enumerate(masks):
            counts = [(g.adj[v] & mask).bit_count() for v in p]
            b[i, j] = sum(counts) / len(p)
            if len(set(counts)) > 1:
                equitable = False
    return QuotientMatrix(b, tuple(len(p) for p in parts), equitable)


def matrix_spectral_radius(m, tol: float = CONVERGENCE_TOL, max_iter: int = MAX_ITERATIONS) -> float:
    """Spectral radius of a small nonnegative square matrix."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if (a < 0).any():
        raise ValueError("matrix must be nonnegative")
    n = a.shape[0]
    if n == 0:
        return 0.0
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        (p, q), (r, s) = a
        return (p + s) / 2 + math.sqrt(((p - s) / 2) ** 2 + q * r)
    # Collatz-Wielandt: min and max of (Ax)_i / x_i bracket the Perron root
    shifted = a + np.eye(n)
    x = np.ones(n) / math.sqrt(n)
    for _ in range(max_iter):
        y = shifted @ x
        x = y / np.linalg.norm(y)
        ax = a @ x
        live = x > 1e-300
        ratios = ax[live] / x[live]
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * max(1.0, hi):
            return (lo + hi) / 2
    raise ConvergenceError("matrix power iteration did not converge")


# -- exact characteristic polynomials ----------------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[int, ...]  # highest degree first, coeffs[0] == 1

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c:+d}x^{d - i}")
        return " ".join(terms)


def char_poly(g: Graph) -> CharPoly:
    """det(xI - A) with exact integers (Faddeev-LeVerrier)."""
    n = g.n
    if n > CHAR_POLY_LIMIT:
        raise GraphError(f"char_poly is limited to {CHAR_POLY_LIMIT} vertices")
    if n == 0:
        return CharPoly((1,))
    a = np.array([[int(g.has_edge(i, j)) for j in range(n)] for i in range(n)], dtype=object)
    ident = np.identity(n, dtype=object)
    for i in range(n):
        for j in range(n):
            ident[i, j] = int(i == j)
    coeffs = [1]
    mk = ident.copy()  # M_1 = I
    for k in range(1, n + 1):
        am = a.dot(mk)
        trace = sum(am[i, i] for i in range(n))
        if trace % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -trace // k
        coeffs.append(int(c))
        mk = am + c * ident
    return CharPoly(tuple(coeffs))


@dataclass(frozen=True)
class ExactRadius:
    """The spectral radius as a root of an irreducible integer polynomial.

    ``minpoly`` identifies the algebraic number exactly (it is the largest
    real root of that polynomial); ``lo``/``hi`` is a rational isolating box.
    """

    minpoly: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _max_root_interval(poly, eps: Fraction):
    ivs = poly.intervals(eps=eps)
    if not ivs:
        return None
    (lo, hi), _ = max(ivs, key=lambda t: t[0][1])
    return Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))


@lru_cache(maxsize=4096)
def _exact_from_coeffs(coeffs: tuple[int, ...]) -> ExactRadius:
    import sympy

    x = sympy.Symbol("x")
    _, factors = sympy.factor_list(sympy.Poly(list(coeffs), x))
    eps = Fraction(1, 10**12)
    while True:
        cands = []
        for f, _mult in factors:
            f = sympy.Poly(f, x)
            iv = _max_root_interval(f, sympy.Rational(eps.numerator, eps.denominator))
            if iv is not None:
                cands.append((iv, f))
        cands.sort(key=lambda t: t[0][1])
        top_iv, top = cands[-1]
        # distinct irreducible factors share no roots; refine until the top interval is separated
        if len(cands) == 1 or cands[-2][0][1] < top_iv[0] or cands[-2][1] == top:
            break
        eps /= 10**6
    lead = top.LC()
    prim = top if lead > 0 else -top
    return ExactRadius(tuple(int(c) for c in prim.all_coeffs()), top_iv[0], top_iv[1])


def exact_radius(g: Graph) -> ExactRadius:
    if g.m == 0:
        return ExactRadius((1, 0), Fraction(0), Fraction(0))
    return _exact_from_coeffs(char_poly(g).coeffs)


def same_radius(g: Graph, h: Graph) -> bool:
    """Exact equality of spectral radii via the minimal polynomial of the largest root."""
    return exact_radius(g).minpoly == exact_radius(h).minpoly


def compare_radius(g: Graph, h: Graph) -> int:
    """-1, 0 or 1 according to the exact order of rho(g) and rho(h)."""
    return compare_exact(exact_radius(g), exact_radius(h))


def compare_exact(a: ExactRadius, b: ExactRadius) -> int:
    if a.minpoly == b.minpoly:
        return 0
    import sympy

    x = sympy.Symbol("x")
    pa, pb = sympy.Poly(list(a.minpoly), x), sympy.Poly(list(b.minpoly), x)
    eps = Fraction(1, 10**12)
    ia, ib = (a.lo, a.hi), (b.lo, b.hi)
    while not (ia[1] < ib[0] or ib[1] < ia[0]):
        eps /= 10**6
        ia = _max_root_interval(pa, sympy.Rational(eps.numerator, eps.denominator))
        ib = _max_root_interval(pb, sympy.Rational(eps.numerator, eps.denominator))
    return -1 if ia[1] < ib[0] else 1


# -- thresholds ---------------------------------------------------------------------------------


def theta_cubic(m: int) -> tuple[int, int, int, int]:
    t = m // 3
    return (1, -1, t - m, m - 3 * t)


def theta(m: int) -> float:
    """Largest root of x^3 - x^2 + (t-m)x + m - 3t with t = floor(m/3), for 4 <= m <= 8."""
    if not 4 <= m <= 8:
        raise ValueError("theta(m) is defined for 4 <= m <= 8")
    a, b, c, d = theta_cubic(m)

    def p(x):
        return ((a * x + b) * x + c) * x + d

    def dp(x):
        return (3 * a * x + 2 * b) * x + c

    lo, hi = math.sqrt(m), float(m)
    if not (p(lo) < 0 < p(hi)):
        raise ArithmeticError(f"theta bracket [{lo}, {hi}] does not straddle a root for m={m}")
    x = hi
    for _ in range(200):
        fx = p(x)
        if fx == 0:
            break
        if fx < 0:
            lo = x
        else:
            hi = x
        d_ = dp(x)
        step = x - fx / d_ if d_ > 0 else None
        nxt = step if step is not None and lo < step < hi else (lo + hi) / 2
        if abs(nxt - x) <= 1e-16 * x or hi - lo <= 1e-15 * hi:
            x = nxt
            break
        x = nxt
    root = x
    if dp(root) <= 0:
        raise ArithmeticError("derivative at theta root is not positive")
    # deflate: remaining quadratic x^2 + (root + b)x + q must have no root above ``root``
    qb = root + b
    qc = root * qb + c
    disc = qb * qb - 4 * qc
    if disc >= 0 and (-qb + math.sqrt(disc)) / 2 > root + 1e-9:
        raise ArithmeticError("found root is not the largest one")
    return root


def k_chorded_threshold(m: int, k: int) -> float:
    if k < 2 or 4 * m < k * k - 1:
        raise ValueError("k_chorded threshold needs k >= 2 and 4m >= k^2 - 1")
    return (k - 1 + math.sqrt(4 * m - k * k + 1)) / 2


def threshold(kind: str, m: int, k: int | None = None) -> float:
    """Spectral threshold for ``kind`` in {"chorded", "k_chorded"}."""
    if m < 4:
        raise ValueError("thresholds are stated for m >= 4")
    if kind == "chorded":
        return theta(m) if m <= 8 else math.sqrt(m)
    if kind == "k_chorded":
        if k is None:
            raise ValueError("k_chorded threshold needs k")
        return k_chorded_threshold(m, k)
    raise ValueError(f"unknown threshold kind {kind!r}")
