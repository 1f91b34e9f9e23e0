"""Periodic systems from the bilateral Charlier measure: lattice sums,
orthonormality on the circle, exact differential recurrence."""

import math

import numpy as np
import pytest

from favard import periodic as per


def direct_lattice_sum(basis, n, x):
    # independent assembly: i^n sum_k sqrt(sigma_k) p_n(k) e^{ikx} with the
    # bilateral masses recomputed from scratch (a^|k|/|k|!, total 2e^a - 1)
    a = basis.measure.name.split(":")[1]
    a = float(a)
    ks = basis.measure.points
    logm = np.array([abs(k) * math.log(a) - math.lgamma(abs(k) + 1.0) for k in ks])
    masses = np.exp(logm) / (2.0 * math.exp(a) - 1.0)
    table = per._poly_table(basis, n)
    return (1j ** n) * np.sum(np.sqrt(masses) * table[n] * np.exp(1j * ks * x))


def test_phi0_frozen_value():
    basis = per.charlier_basis(0.5, N=16)
    got = per.periodic_phi(basis, 0, 0.0)
    # frozen from the direct lattice-sum oracle
    assert abs(got - 2.3466885836778277) < 1e-14
    assert abs(got.imag) < 1e-15


def test_periodic_phi_matches_direct_sum():
    basis = per.charlier_basis(0.5, N=16)
    for n, x in ((0, 0.0), (2, 1.1), (5, -2.4), (9, 0.7)):
        direct = direct_lattice_sum(basis, n, x)
        got = per.periodic_phi(basis, n, x)
        assert abs(got - direct) < 1e-13, (n, x)


def test_lattice_grows_until_tail_invariant():
    # truncation tail sum_{|k|>K} sigma_k p_n(k)^2 must sit below 1e-20,
    # which pushes K well past the naive a^K/K! heuristic
    for a, N, K in ((0.5, 8, 27), (0.5, 16, 35), (0.5, 32, 47), (1.0, 16, 39)):
        basis = per.charlier_basis(a, N=N)
        assert basis.K == K, (a, N)
        assert per._tail_beyond(a, basis.jacobi, basis.K, N - 1) < 1e-20


def test_explicit_small_K_rejected():
    with pytest.raises(ValueError):
        per.charlier_basis(0.5, N=16, K=12)


def test_two_pi_periodicity_and_realness():
    basis = per.charlier_basis(0.5, N=12)
    x = np.linspace(-3.0, 3.0, 11)
    for n in (0, 3, 8):
        v = per.periodic_phi(basis, n, x)
        w = per.periodic_phi(basis, n, x + 2.0 * np.pi)
        assert np.max(np.abs(v - w)) < 1e-12
        # i^n phase makes the functions real on the real line
        assert np.max(np.abs(v.imag)) < 1e-12


def test_gram_identity_trapezoid():
    basis = per.charlier_basis(0.5, N=8)
    G = per.periodic_gram(basis, 8, M=4096)
    assert np.max(np.abs(G - np.eye(8))) < 1e-12


def test_gram_rejects_coarse_trapezoid():
    basis = per.charlier_basis(0.5, N=8)
    with pytest.raises(ValueError):
        per.periodic_gram(basis, 8, M=basis.K)  # < 4K breaks exactness


def test_differential_recurrence_exact():
    basis = per.charlier_basis(0.5, N=16)
    assert per.periodic_diff_check(basis, 4) < 1e-13
    assert per.periodic_diff_check(basis, 14) < 1e-12


def test_normalization_l2_on_circle():
    # orthonormal in L2(dx/2pi): the mean of |phi_n|^2 over a period is 1
    basis = per.charlier_basis(1.0, N=6)
    M = 4 * basis.K + 8
    x = -np.pi + 2.0 * np.pi * np.arange(M) / M
    for n in (0, 4):
        v = per.periodic_phi(basis, n, x)
        assert abs(np.mean(np.abs(v) ** 2) - 1.0) < 1e-12


def test_charlier_parameter_validation():
    with pytest.raises(ValueError):
        per.charlier_basis(0.0, N=8)
    with pytest.raises(ValueError):
        per.charlier_basis(-1.0, N=8)
