"""Gauss quadrature from recurrence coefficients, and oscillatory transforms."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import _panels
from .errors import AccuracyError, EigenError
from .recurrence import JacobiMatrix, MeasureSpec, _truncated_interval

__all__ = ["QuadratureRule", "golub_welsch", "integrate", "oscillatory_transform"]


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss rule for a unit-mass measure: nodes ascending, weights positive."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int
    measure: MeasureSpec | None = None


def golub_welsch(jacobi: JacobiMatrix, N: int, measure: MeasureSpec | None = None) -> QuadratureRule:
    """N-point Gauss rule from the leading N x N block of the Jacobi matrix.

    Nodes are the eigenvalues of the symmetric tridiagonal block, weights the
    squared first components of its normalized eigenvectors (Golub-Welsch).
    The rule integrates polynomials of degree <= 2N - 1 exactly against the
    measure underlying ``jacobi``.
    """
    if N <= 0:
        raise ValueError("N must be positive")
    if N > len(jacobi):
        raise IndexError(f"need {N} coefficient pairs, have {len(jacobi)}")
    try:
        if N == 1:
            nodes = np.array([jacobi.c[0]])
            vecs0 = np.array([1.0])
        else:
            nodes, vecs = eigh_tridiagonal(jacobi.c[:N], jacobi.b[: N - 1])
            vecs0 = vecs[0]
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigenError(f"tridiagonal eigensolve failed for N={N}: {exc}") from exc
    weights = vecs0**2
    weights = weights / weights.sum()
    return QuadratureRule(nodes=nodes, weights=weights, exactness=2 * N - 1, measure=measure)


def integrate(f, rule: QuadratureRule) -> float | complex:
    """Integral of f against the rule's measure: sum of w_i f(x_i)."""
    vals = np.asarray(f(rule.nodes))
    if not np.all(np.isfinite(vals)):
        bad = int(np.nonzero(~np.isfinite(np.atleast_1d(vals)))[0][0])
        raise ValueError(f"integrand non-finite at node {rule.nodes[bad]!r}")
    total = np.sum(rule.weights * vals)
    return complex(total) if np.iscomplexobj(vals) else float(total)


_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _transform_nodes(support, breakpoints, sqrt_weight, degree, freq, refine):
    lo, hi = _truncated_interval(sqrt_weight, support, degree)
    width = min((hi - lo) / max(8, degree), math.pi / (1.0 + freq)) / 2.0**refine
    edges = _panels.build_edges(
        lo,
        hi,
        width=width,
        grade_lo=np.isfinite(support[0]),
        grade_hi=np.isfinite(support[1]),
        interior=breakpoints,
    )
    return _panels.panel_rule(edges)


def oscillatory_transform(poly, sqrt_weight, support, x: float, tol: float = 1e-10,
                          *, degree: int = 0, breakpoints=(), extra_phase=None,
                          extra_freq: float = 0.0, max_refine: int = 4) -> complex:
    """(1/sqrt(2 pi)) * integral of e^{i x xi} poly(xi) sqrt_weight(xi) d xi.

    Composite fixed-order Gauss panels of width at most pi/(1 + |x|) resolve
    the Fourier kernel directly; infinite supports are truncated where
    sqrt_weight (times |xi|^degree, for a degree-``degree`` polynomial
    factor) drops below 1e-18 of its peak.  The panel count is doubled until
    two successive refinements agree to ``tol``; failure to converge within
    the budget raises AccuracyError carrying the achieved estimate.

    ``extra_phase`` adds a real phase sigma(xi) inside the kernel and
    ``extra_freq`` should then bound max |sigma'| so panels stay resolved.
    """
    freq = abs(x) + extra_freq
    prev = None
    est = np.inf
    for refine in range(max_refine + 1):
        xs, ws = _transform_nodes(support, breakpoints, sqrt_weight, degree, freq, refine)
        phase = x * xs
        if extra_phase is not None:
            phase = phase + extra_phase(xs)
        val = complex(np.sum(ws * poly(xs) * sqrt_weight(xs) * np.exp(1j * phase)) / _SQRT_2PI)
        if prev is not None:
            est = abs(val - prev)
            if est <= tol:
                return val
        prev = val
    raise AccuracyError(
        f"oscillatory transform did not reach tol={tol:g}; estimate {est:g}",
        estimate=est,
    )
