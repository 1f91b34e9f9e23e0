"""Recurrence coefficients: closed forms vs hand formulas and the
discretized Stieltjes procedure."""

import numpy as np
import pytest

from favard import recurrence as rec
from favard.errors import DegenerateMeasureError


def jacobi_b_hand(alpha: float, beta: float, n: int) -> float:
    # orthonormal off-diagonal from the monic beta_n of the Jacobi weight
    # (1-x)^alpha (1+x)^beta: beta_n = 4n(n+a)(n+b)(n+a+b) /
    # ((2n+a+b)^2 (2n+a+b+1)(2n+a+b-1)), b_n = sqrt(beta_{n+1}).
    m = n + 1
    s = alpha + beta
    if m == 1:
        # the (m+s)/(2m+s-1) factor cancels at m = 1
        return float(np.sqrt(4.0 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))))
    num = 4.0 * m * (m + alpha) * (m + beta) * (m + s)
    den = (2 * m + s) ** 2 * (2 * m + s + 1) * (2 * m + s - 1)
    return float(np.sqrt(num / den))


def test_hermite_coeffs_closed_form():
    for n in range(20):
        b, c = rec.hermite_coeffs(n)
        assert c == 0.0
        assert abs(b - np.sqrt((n + 1) / 2.0)) < 1e-15


def test_laguerre_coeffs_closed_form():
    for alpha in (0.0, 1.0, 2.5):
        for n in range(12):
            b, c = rec.laguerre_coeffs(alpha, n)
            assert abs(c - (2 * n + alpha + 1)) < 1e-13
            assert abs(b - np.sqrt((n + 1) * (n + alpha + 1))) < 1e-13


def test_jacobi_coeffs_match_hand_formula():
    for alpha, beta in ((0.0, 0.0), (1.0, 1.0), (0.5, 0.5), (-0.5, 0.5), (2.0, 3.0)):
        for n in range(10):
            b, c = rec.jacobi_coeffs(alpha, beta, n)
            assert abs(b - jacobi_b_hand(alpha, beta, n)) < 1e-13
            if alpha == beta:
                assert abs(c) < 1e-15


def test_ultraspherical_is_jacobi_aa():
    # weight (1 - x^2)^alpha, i.e. Jacobi with both exponents alpha
    for alpha in (0.0, 1.0, 1.5):
        for n in range(8):
            bu, cu = rec.ultraspherical_coeffs(alpha, n)
            bj, cj = rec.jacobi_coeffs(alpha, alpha, n)
            assert abs(bu - bj) < 1e-14
            assert abs(cu - cj) < 1e-14


def test_stieltjes_reproduces_closed_forms():
    cases = [
        (rec.hermite_measure(), lambda n: rec.hermite_coeffs(n)),
        (rec.legendre_measure(), lambda n: rec.jacobi_coeffs(0.0, 0.0, n)),
        (rec.ultraspherical_measure(1.0), lambda n: rec.ultraspherical_coeffs(1.0, n)),
        (rec.laguerre_measure(0.0), lambda n: rec.laguerre_coeffs(0.0, n)),
        (rec.laguerre_measure(1.0), lambda n: rec.laguerre_coeffs(1.0, n)),
    ]
    for measure, coeff in cases:
        J = rec.stieltjes(measure, 11)
        for n in range(11):
            b, c = coeff(n)
            assert abs(J.b[n] - b) < 1e-10, (measure.name, n)
            assert abs(J.c[n] - c) < 1e-10, (measure.name, n)


def test_eval_poly_table_orthonormal_under_quadrature():
    from favard.quadrature import golub_welsch
    m = rec.hermite_measure()
    J = rec.stieltjes(m, 24)
    rule = golub_welsch(J, 24, m)
    table = rec.eval_poly_table(J, 11, rule.nodes)
    G = (table * rule.weights) @ table.T
    assert np.max(np.abs(G - np.eye(12))) < 1e-12


def test_eval_poly_scalar_matches_table():
    J = rec.build_jacobi(rec.hermite_coeffs, 12)
    xi = 0.83
    table = rec.eval_poly_table(J, 6, np.array([xi]))
    for n in range(7):
        assert abs(rec.eval_poly(J, n, xi) - table[n, 0]) < 1e-14


def test_clenshaw_matches_direct_sum():
    rng = np.random.default_rng(0)
    J = rec.build_jacobi(rec.hermite_coeffs, 16)
    a = rng.standard_normal(12)
    xi = np.linspace(-2.0, 2.0, 7)
    table = rec.eval_poly_table(J, 11, xi)
    direct = a @ table
    via = rec.clenshaw(J, a, xi)
    assert np.max(np.abs(via - direct)) < 1e-12


def test_charlier_bilateral_masses():
    m = rec.charlier_bilateral(0.5, 20)
    assert m.kind == "discrete"
    assert np.all(np.diff(m.points) == 1.0)
    assert abs(np.sum(m.masses) - 1.0) < 1e-14
    # symmetric lattice, masses proportional to a^|k|/|k|!
    k0 = np.argmin(np.abs(m.points))
    assert abs(m.masses[k0 + 1] / m.masses[k0] - 0.5) < 1e-13
    assert abs(m.masses[k0 + 2] / m.masses[k0] - 0.125) < 1e-13


def test_stieltjes_discrete_degenerate():
    # N orthonormal polynomials need at least N support points
    m = rec.charlier_bilateral(0.5, 3)
    with pytest.raises((ValueError, DegenerateMeasureError)):
        rec.stieltjes(m, 12)


def test_custom_measure_positive_weight_required():
    with pytest.raises(ValueError):
        rec.custom_measure(lambda x: -np.ones_like(x), (-1.0, 1.0))


def test_jacobi_matrix_json_roundtrip():
    J = rec.build_jacobi(rec.hermite_coeffs, 8)
    J2 = rec.JacobiMatrix.from_json(J.to_json())
    assert np.array_equal(J.b, J2.b)
    assert np.array_equal(J.c, J2.c)
