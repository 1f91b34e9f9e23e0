"""Composite Gauss-Legendre panels with geometric grading at marked points.

Shared backend for measure discretization and oscillatory integrals.  A
fixed-order Gauss rule is applied on each panel; panels shrink geometrically
toward support endpoints and interior breakpoints so integrable algebraic
singularities of a weight do not degrade convergence.
"""

import numpy as np

__all__ = ["GL_ORDER", "build_edges", "panel_rule", "truncation_point"]

GL_ORDER = 32
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)

# Geometric grading: 42 levels of ratio 1/4 puts the innermost panel at
# ~3e-26 of the original width, enough for exponents down to -1/2.
_GRADE_LEVELS = 42
_GRADE_RATIO = 0.25


def _graded(a: float, b: float, toward_a: bool) -> np.ndarray:
    """Edges subdividing [a, b] geometrically toward one end."""
    d = (b - a) * _GRADE_RATIO ** np.arange(_GRADE_LEVELS, 0, -1)
    if toward_a:
        return np.concatenate(([a], a + d, [b]))
    return np.concatenate(([a], b - d[::-1], [b]))


def _segment_edges(a, b, width, grade_a, grade_b):
    n = max(1, int(np.ceil((b - a) / width)))
    if grade_a and grade_b and n == 1:
        n = 2
    base = np.linspace(a, b, n + 1)
    pieces = []
    lo_idx, hi_idx = 0, n
    if grade_a:
        pieces.append(_graded(base[0], base[1], toward_a=True)[:-1])
        lo_idx = 1
    pieces.append(base[lo_idx:hi_idx])
    if grade_b:
        pieces.append(_graded(base[n - 1], base[n], toward_a=False))
    else:
        pieces.append(base[hi_idx : hi_idx + 1])
    return np.concatenate(pieces)


def build_edges(lo, hi, width, grade_lo=False, grade_hi=False, interior=()):
    """Panel edges covering [lo, hi] with panel width <= ``width``.

    ``interior`` points split the domain and are graded from both sides;
    ``grade_lo``/``grade_hi`` request grading toward the outer endpoints.
    """
    if not np.isfinite(lo) or not np.isfinite(hi) or hi <= lo:
        raise ValueError(f"invalid panel interval [{lo}, {hi}]")
    pts = [p for p in sorted(set(interior)) if lo < p < hi]
    bounds = [lo] + pts + [hi]
    out = []
    for i, (a, b) in enumerate(zip(bounds[:-1], bounds[1:])):
        ga = grade_lo if i == 0 else True
        gb = grade_hi if i == len(bounds) - 2 else True
        seg = _segment_edges(a, b, width, ga, gb)
        out.append(seg if i == 0 else seg[1:])
    return np.concatenate(out)


def panel_rule(edges) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite fixed-order rule on ``edges``."""
    edges = np.asarray(edges, dtype=float)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * _NODES).ravel()
    w = (half[:, None] * _WEIGHTS[None, :]).ravel()
    return x, w


def truncation_point(fn, side: int, degree: int = 0, rel: float = 1e-18,
                     inner: float = 1e-2, outer: float = 1e9) -> float:
    """Radius beyond which ``fn(ξ) * max(1,|ξ|)**degree`` is negligible.

    ``side`` is +1 or -1.  The returned radius R satisfies
    fn(side*r)*r^degree <= rel * (scanned maximum) for every scanned r >= R.
    Raises ValueError when no such radius exists within ``outer`` (the
    integrand does not decay).
    """
    rs = np.geomspace(inner, outer, 1200)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.asarray(fn(side * rs), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError("weight evaluation produced non-finite values")
    # Points where the weight has underflowed to zero are negligible no
    # matter the polynomial factor; flooring them instead would make the
    # r^degree term dominate the scan for large degree.
    logs = np.full(rs.shape, -np.inf)
    pos = vals > 0.0
    logs[pos] = np.log(vals[pos]) + degree * np.log(np.maximum(rs[pos], 1.0))
    top = np.max(logs)
    above = np.nonzero(logs > top + np.log(rel))[0]
    if above.size == 0:
        return inner
    last = above[-1]
    if last >= rs.size - 1:
        raise ValueError("weight does not decay fast enough to truncate")
    return float(rs[last + 1])
