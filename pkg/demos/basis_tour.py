"""Tour of the transformed bases: evaluation, orthonormality, differentiation.

Each basis phi_n is the Fourier transform of an orthonormal polynomial times
the square root of its weight.  The same three-term recurrence that defines
the polynomials gives a tridiagonal skew-Hermitian differentiation matrix,
so d/dx acts on coefficients as a banded operator and exp(tau D) translates.

Run: python3 demos/basis_tour.py
"""

import numpy as np

from favard import diffop
from favard import verify
from favard.basis import make_basis, phi_grid
from favard.coeffs import coeffs_xspace


def main():
    print("= bases and orthonormality =")
    for family in ("hermite", "legendre", "mt", "tanhjacobi:0.75,0.75"):
        basis = make_basis(family, N=14)
        gram = verify.check_gram(basis, N=12)
        rec = verify.check_recurrence(basis, N=10)
        print(f"  {family:22s} gram residual {gram.max_abs_error:9.2e}   "
              f"recurrence residual {rec.max_abs_error:9.2e}")

    print()
    print("= differentiation is tridiagonal =")
    basis = make_basis("hermite", N=32)
    D = diffop.build(basis.jacobi, 32)
    f = lambda x: np.exp(-(x**2) / 2.0) * np.sin(2.0 * x)
    df = lambda x: np.exp(-(x**2) / 2.0) * (2.0 * np.cos(2.0 * x)
                                            - x * np.sin(2.0 * x))
    a = coeffs_xspace(f, basis, 32)
    da = diffop.apply(D, a.values)
    x = np.linspace(-4.0, 4.0, 9)
    table = phi_grid(basis, 31, x)
    err = np.max(np.abs(da @ table - df(x)))
    print(f"  d/dx via banded matrix, max error on grid: {err:.2e}")

    print()
    print("= exp(tau D) is translation by tau =")
    tau = 0.8
    shifted = diffop.expm_apply(D, tau, a.values)
    err = np.max(np.abs(shifted @ table - f(x + tau)))
    norm_drift = abs(np.linalg.norm(shifted) - np.linalg.norm(a.values))
    print(f"  f(x + {tau}) reconstruction error: {err:.2e}")
    print(f"  coefficient norm drift:        {norm_drift:.2e}")

    print()
    print("= reconstruction from coefficients =")
    g = a.values @ table
    print(f"  synthesis error at 9 points:   {np.max(np.abs(g - f(x))):.2e}")


if __name__ == "__main__":
    main()
