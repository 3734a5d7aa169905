import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings

from chorded_spectra.families import (
    book_star,
    clique_join,
    complete,
    complete_bipartite,
    cycle,
    family,
    fixture,
    path,
    star,
    theorem12_extremal,
)
from chorded_spectra.graph import GraphError, disjoint_union, empty_graph
from chorded_spectra.spectral import (
    ConvergenceError,
    char_poly,
    compare_radius,
    exact_radius,
    matrix_spectral_radius,
    perron_vector,
    quotient_matrix,
    same_radius,
    spectral_radius,
    theta,
    threshold,
)

from conftest import graphs, random_graph


def test_star9_radius():
    assert spectral_radius(star(9)).rho == pytest.approx(3.0, abs=1e-9)


def test_h1_radius():
    assert spectral_radius(fixture("H1")).rho == pytest.approx(2.8156, abs=1e-4)


def test_book_star_m7_radius():
    assert spectral_radius(book_star(1, 4)).rho == pytest.approx(2.6813, abs=1e-4)


def test_empty_radius():
    r = spectral_radius(empty_graph(0))
    assert r.rho == 0 and r.perron is None
    assert spectral_radius(empty_graph(4)).rho == 0


def test_result_metadata():
    r = spectral_radius(fixture("F3"))
    assert r.residual <= 1e-9 and r.iterations > 0
    assert np.all(r.perron > 0) and np.linalg.norm(r.perron) == pytest.approx(1.0)


def test_disconnected_takes_max_component():
    g = disjoint_union(complete(4), star(4))
    r = spectral_radius(g)
    assert r.rho == pytest.approx(3.0, abs=1e-9) and r.perron is None


def test_nonconvergence_is_reported():
    with pytest.raises(ConvergenceError):
        spectral_radius(path(30), max_iter=3)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_matches_dense_eigensolver_and_lower_bounds(g):
    r = spectral_radius(g).rho
    dense = max(np.linalg.eigvalsh(g.adjacency_matrix())) if g.n else 0.0
    assert r == pytest.approx(dense, abs=1e-9)
    if g.m:
        assert r >= 2 * g.m / g.n - 1e-9
        assert r >= math.sqrt(max(g.degrees())) - 1e-9


@pytest.mark.parametrize("a", range(1, 11))
def test_complete_bipartite_radius(a):
    for b in range(a, 11):
        assert spectral_radius(complete_bipartite(a, b)).rho == pytest.approx(math.sqrt(a * b), abs=1e-9)


# -- Perron vector -------------------------------------------------------------------------------


def test_perron_complete():
    assert np.allclose(perron_vector(complete(6)), 1 / math.sqrt(6))


def test_perron_star_ratio():
    # x_hub * 2 = 4 x_leaf and 2 x_leaf = x_hub  ->  hub/leaf = sqrt(4)
    x = perron_vector(star(4))
    assert x[0] / x[1] == pytest.approx(2.0, abs=1e-9)
    assert np.allclose(x[1:], x[1])


def test_perron_cycle():
    assert np.allclose(perron_vector(cycle(5)), 1 / math.sqrt(5))


def test_perron_disconnected_errors():
    with pytest.raises(GraphError):
        perron_vector(disjoint_union(complete(2), complete(2)))


# -- quotients -----------------------------------------------------------------------------------


def test_quotient_clique_join():
    q = quotient_matrix(clique_join(3, 4), [[0, 1, 2], [3, 4, 5, 6]])
    assert q.equitable
    assert q.entries.tolist() == [[2, 4], [3, 0]]


def test_quotient_singletons_is_adjacency(rng):
    g = random_graph(rng, 7, 0.5)
    q = quotient_matrix(g, [[v] for v in range(7)])
    assert q.equitable and np.array_equal(q.entries, g.adjacency_matrix())


def test_quotient_star():
    q = quotient_matrix(star(3), [[0], [1, 2, 3]])
    assert q.entries.tolist() == [[0, 3], [1, 0]]
    assert matrix_spectral_radius(q.entries) == pytest.approx(math.sqrt(3), abs=1e-12)


def test_quotient_non_equitable_flagged():
    q = quotient_matrix(path(4), [[0, 1], [2, 3]])
    assert not q.equitable


@pytest.mark.parametrize("parts", [[[0, 1], [1, 2, 3]], [[0, 1]], [[0, 1, 2, 3], []]])
def test_quotient_bad_partition(parts):
    with pytest.raises(GraphError):
        quotient_matrix(path(4), parts)


def test_matrix_spectral_radius_examples():
    k, m = 2, 9
    assert matrix_spectral_radius([[k - 1, m / k - (k - 1) / 2], [k, 0]]) == pytest.approx((1 + math.sqrt(33)) / 2, abs=1e-12)
    assert matrix_spectral_radius(np.eye(3)) == pytest.approx(1.0, abs=1e-12)
    assert matrix_spectral_radius([[0, 1], [1, 0]]) == pytest.approx(1.0, abs=1e-12)


def test_matrix_spectral_radius_3x3_against_numpy(rng):
    for _ in range(30):
        a = np.array([[rng.randint(0, 4) for _ in range(3)] for _ in range(3)], dtype=float) + np.eye(3)
        assert matrix_spectral_radius(a) == pytest.approx(max(abs(np.linalg.eigvals(a))), abs=1e-9)


# -- char poly -----------------------------------------------------------------------------------


def test_char_poly_k2():
    assert char_poly(complete(2)).coeffs == (1, 0, -1)


def test_char_poly_star9_against_determinant():
    x = sympy.Symbol("x")
    ref = sympy.Matrix(star(9).adjacency_matrix().astype(int)).charpoly(x).all_coeffs()
    assert list(char_poly(star(9)).coeffs) == [int(c) for c in ref]
    assert char_poly(star(9)).coeffs == (1, 0, -9) + (0,) * 8


def test_char_poly_structure_random(rng):
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 10), rng.random())
        c = char_poly(g).coeffs
        assert c[0] == 1 and c[1] == 0 and c[2] == -g.m


def test_char_poly_vanishes_at_rho(rng):
    for _ in range(50):
        g = random_graph(rng, rng.randint(2, 12), 0.4)
        p = char_poly(g)
        r = spectral_radius(g).rho
        scale = max(1.0, r) ** p.degree
        assert abs(p(r)) / scale <= 1e-6


def test_exact_ties_at_m9():
    radii = [book_star(3, 0), book_star(2, 3), book_star(1, 6), star(9)]
    assert all(same_radius(radii[0], g) for g in radii[1:])
    assert exact_radius(star(9)).minpoly == (1, -3)
    assert compare_radius(fixture("H1"), star(9)) == -1
    assert compare_radius(complete(4), fixture("H2")) == 1


# -- thresholds ----------------------------------------------------------------------------------


def test_theta6_closed_form():
    assert theta(6) == pytest.approx((1 + math.sqrt(17)) / 2, abs=1e-12)
    assert spectral_radius(theorem12_extremal(6)).rho == pytest.approx(theta(6), abs=1e-9)


@pytest.mark.parametrize("m", range(4, 9))
def test_theta_is_radius_of_gm_and_exceeds_sqrt(m):
    assert spectral_radius(family("theorem12_extremal", m)).rho == pytest.approx(theta(m), abs=1e-9)
    assert theta(m) > math.sqrt(m)
    t = m // 3
    x = theta(m)
    assert abs(x**3 - x**2 + (t - m) * x + m - 3 * t) < 1e-10


def test_theta_domain():
    for m in (3, 9):
        with pytest.raises(ValueError):
            theta(m)


def test_thresholds():
    assert threshold("chorded", 9) == 3.0
    assert threshold("chorded", 6) == pytest.approx(2.5616, abs=1e-4)
    assert threshold("k_chorded", 9, 2) == pytest.approx((1 + math.sqrt(33)) / 2, abs=1e-12)
    assert threshold("k_chorded", 9, 2) == pytest.approx(3.3723, abs=1e-4)


@pytest.mark.parametrize("args", [("chorded", 3), ("k_chorded", 9), ("k_chorded", 9, 1), ("k_chorded", 4, 5),
                                  ("other", 9)])
def test_threshold_domain(args):
    with pytest.raises(ValueError):
        threshold(*args)


def test_matrix_radius_nonsymmetric_quotient():
    # stalled norm estimate used to stop this one after a single step
    b = [[0, 0, 0, 1], [0, 0, 1, 1], [0, 2, 0, 0], [1, 2, 0, 0]]
    assert matrix_spectral_radius(b) == pytest.approx(max(abs(np.linalg.eigvals(np.array(b, float)))), abs=1e-10)


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2, max_n=10))
def test_refinement_quotient_matches_rho(g):
    from chorded_spectra.canon import _refine

    if not g.is_connected():
        return
    q = quotient_matrix(g, _refine(g.adj, [list(range(g.n))]))
    assert q.equitable
    assert matrix_spectral_radius(q.entries) == pytest.approx(spectral_radius(g).rho, abs=1e-9)
