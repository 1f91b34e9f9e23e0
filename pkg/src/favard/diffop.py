"""Truncated differentiation matrices D_N and their exponentials.

In a transformed basis the derivative acts on expansion coefficients as the
skew-Hermitian tridiagonal matrix with D_{m,m-1} = b_{m-1}, D_{m,m} = i c_m,
D_{m,m+1} = -b_m, the principal N x N section of the differential recurrence.
e^{tau D} is unitary; its application uses a Lanczos Krylov method on the
Hermitian matrix -i D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .errors import EigenError
from .recurrence import JacobiMatrix

__all__ = ["DiffMatrix", "apply", "build", "expm_apply", "spectral_radius"]


@dataclass(frozen=True)
class DiffMatrix:
    """Skew-Hermitian tridiagonal differentiation matrix, stored as bands.

    ``sub[m-1]`` is the entry (m, m-1) = b_{m-1}, ``diag[m]`` the imaginary
    part c_m of the entry (m, m) = i c_m, and ``super[m]`` the entry
    (m, m+1) = -b_m; storage is O(N).
    """

    sub: np.ndarray
    diag: np.ndarray
    super: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sub", np.asarray(self.sub, dtype=float))
        object.__setattr__(self, "diag", np.asarray(self.diag, dtype=float))
        object.__setattr__(self, "super", np.asarray(self.super, dtype=float))
        if self.diag.ndim != 1 or self.diag.size < 1:
            raise ValueError("diag must hold at least one entry")
        if self.sub.shape != (self.diag.size - 1,) or self.super.shape != self.sub.shape:
            raise ValueError("band lengths must be N-1, N, N-1")

    @property
    def N(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        """The full complex N x N matrix; for small-N checks only."""
        D = np.zeros((self.N, self.N), dtype=complex)
        np.fill_diagonal(D, 1j * self.diag)
        idx = np.arange(self.N - 1)
        D[idx + 1, idx] = self.sub
        D[idx, idx + 1] = self.super
        return D


def build(J: JacobiMatrix, N: int) -> DiffMatrix:
    """Principal N x N section of the differentiation matrix for J."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > len(J):
        raise IndexError(f"need {N} coefficient pairs, have {len(J)}")
    b = np.asarray(J.b[: N - 1], dtype=float)
    return DiffMatrix(b, np.asarray(J.c[:N], dtype=float), -b)


def _vector_of(a) -> np.ndarray:
    values = getattr(a, "values", a)
    return np.asarray(values, dtype=complex)


def _rewrap(a, values: np.ndarray):
    wrap = getattr(a, "with_values", None)
    return wrap(values) if wrap is not None else values


def apply(D: DiffMatrix, a):
    """Coefficients of u' given coefficients a of u; O(N).

    Accepts a plain complex vector or a CoefficientVector and returns the
    same kind.
    """
    v = _vector_of(a)
    if v.shape != (D.N,):
        raise ValueError(f"coefficient length {v.shape} does not match N={D.N}")
    out = 1j * D.diag * v
    out[1:] += D.sub * v[:-1]
    out[:-1] += D.super * v[1:]
    return _rewrap(a, out)


def expm_apply(D: DiffMatrix, tau: float, a, tol: float = 1e-12):
    """e^{tau D} a by a Lanczos Krylov approximation; unitary to ~10 tol.

    -i D is Hermitian, so the Krylov projection is a real symmetric
    tridiagonal matrix whose exponential is handled by a dense eigensolve;
    the subspace grows (with full reorthogonalization) until two successive
    approximations agree to tol * ||a||, reaching exactness at size N.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    v = _vector_of(a)
    if v.shape != (D.N,):
        raise ValueError(f"coefficient length {v.shape} does not match N={D.N}")
    norm_a = float(np.linalg.norm(v))
    if tau == 0.0 or norm_a == 0.0:
        return _rewrap(a, v.copy())

    # Lanczos on H = -iD: alpha_k real (quadratic forms of a Hermitian
    # matrix), beta_k >= 0, so the projection T_k is real symmetric.
    N = D.N
    Q = [v / norm_a]
    alphas: list[float] = []
    betas: list[float] = []
    prev_estimate = None
    result = None
    step = 4
    for k in range(N):
        w = -1j * apply(D, Q[-1])
        alpha = float(np.real(np.vdot(Q[-1], w)))
        alphas.append(alpha)
        w = w - alpha * Q[-1]
        if k > 0:
            w = w - betas[-1] * Q[-2]
        # Full reorthogonalization, twice, keeps Q orthonormal to machine
        # precision so the projected exponential stays unitary.
        for _ in range(2):
            for q in Q:
                w = w - np.vdot(q, w) * q
        beta = float(np.linalg.norm(w))
        done = k + 1 == N or beta < 1e-14 * norm_a
        if done or (k + 1) % step == 0:
            T_diag = np.array(alphas)
            T_off = np.array(betas)
            vals, vecs = eigh_tridiagonal(T_diag, T_off)
            core = vecs @ (np.exp(1j * tau * vals) * vecs[0].conj())
            estimate = norm_a * np.stack(Q, axis=1) @ core
            if prev_estimate is not None:
                if float(np.linalg.norm(estimate - prev_estimate)) <= tol * norm_a:
                    result = estimate
                    break
            prev_estimate = estimate
            if done:
                result = estimate
                break
        betas.append(beta)
        Q.append(w / beta)
    return _rewrap(a, result)


def spectral_radius(D: DiffMatrix) -> float:
    """max |eigenvalue| of D.

    The eigenvalues of D are i times those of the symmetric tridiagonal
    matrix with diagonal c and off-diagonal b (the Jacobi truncation), so
    this equals the largest-magnitude Gauss node of the underlying N-point
    rule.
    """
    if D.N == 1:
        return abs(float(D.diag[0]))
    try:
        vals = eigvalsh_tridiagonal(D.diag, D.sub)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigenError(f"tridiagonal eigensolve failed for N={D.N}: {exc}") from exc
    return float(np.max(np.abs(vals)))
