"""Legendre-Fenchel conjugation.

Exact path: for f = max_i <phi_i, .> + c_i on {A x <= b}, the epigraph of f*
is ``conv{(phi_i, -c_i)} + cone{(a_j, b_j)} + cone{(0, 1)}``.  Its facets are
the pieces of f* (non-vertical ones) and the domain of f* (vertical ones).

Grid path: discrete transform max_i y x_i - g_i via the lower hull of the
samples, evaluated so that the result matches the double loop bit for bit.
"""

import numpy as np

from .core import GridFunction1D, PLConvexFunction, lower_hull_indices
from .exceptions import DimensionError, ImproperFunctionError
from .polyhedron import Polyhedron

MAX_EXACT_DIM = 3


def conjugate_pl(f, max_dim=MAX_EXACT_DIM):
    """Exact Fenchel conjugate of a proper PL convex function (n <= 3)."""
    if f.n > max_dim:
        raise DimensionError(f"exact conjugation is capped at n <= {max_dim}")
    if not f.is_proper():
        raise ImproperFunctionError("conjugate of an improper function")
    n = f.n
    points = np.hstack([f.slopes, -f.offsets[:, None]])
    rays = [np.eye(1, n + 1, n)]
    if f.domain is not None:
        rays.append(np.hstack([f.domain.A, f.domain.b[:, None]]))
    epi = Polyhedron(n + 1, vertices=points, rays=np.vstack(rays))
    A, b = epi.A, epi.b
    vertical = np.abs(A[:, -1]) <= 1e-9
    lower = A[:, -1] < -1e-9
    if not lower.any():
        raise ImproperFunctionError("conjugate has no finite lower boundary")
    slopes = -A[lower, :n] / A[lower, -1:]
    offsets = b[lower] / A[lower, -1]
    domain = None
    if vertical.any():
        domain = Polyhedron(n, A=A[vertical, :n], b=b[vertical])
    return PLConvexFunction(slopes, offsets, domain)


def biconjugate(f, max_dim=MAX_EXACT_DIM):
    return conjugate_pl(conjugate_pl(f, max_dim), max_dim)


def _finite_samples(g):
    fin = np.isfinite(g.values)
    if not fin.any():
        raise ValueError("all samples are +inf")
    return g.x[fin], g.values[fin]


def default_dual_grid(g, count=None):
    """Output grid spanning the slope range of the lower envelope."""
    x, v = _finite_samples(g)
    count = g.count if count is None else count
    if x.size < 2:
        lo, hi = -1.0, 1.0
    else:
        h = lower_hull_indices(x, v)
        s = np.diff(v[h]) / np.diff(x[h])
        lo, hi = float(s.min()), float(s.max())
        if hi <= lo:
            lo, hi = lo - 1.0, hi + 1.0
    return lo, (hi - lo) / (count - 1), count


def legendre_bruteforce(x, v, y, chunk=2048):
    """max_i (y_j * x_i - v_i) by the O(NM) double loop (chunked over y)."""
    y = np.asarray(y, float)
    out = np.empty(y.size)
    for s in range(0, y.size, chunk):
        out[s:s + chunk] = np.max(y[s:s + chunk, None] * x[None, :] - v[None, :], axis=1)
    return out


def legendre_fast(x, v, y, window=2):
    """Same values as :func:`legendre_bruteforce` via the lower hull.

    Samples far above the hull can never attain the maximum.  The slope
    search picks a hull vertex; ties at rounding level are settled by
    evaluating nearby hull vertices and the near-hull samples around them
    with the exact brute-force expression.
    """
    x = np.asarray(x, float)
    v = np.asarray(v, float)
    y = np.asarray(y, float)
    h = lower_hull_indices(x, v)
    H = h.size
    if H == 1:
        return y * x[h[0]] - v[h[0]]
    hx, hv = x[h], v[h]
    slopes = np.diff(hv) / np.diff(hx)
    k = np.searchsorted(slopes, y)
    best = np.full(y.size, -np.inf)
    for d in range(-window, window + 1):
        j = np.clip(k + d, 0, H - 1)
        best = np.maximum(best, y * hx[j] - hv[j])

    # samples within rounding distance of a hull edge, grouped by edge
    gap = np.clip(np.searchsorted(h, np.arange(x.size), side="right") - 1, 0, H - 2)
    chord = hv[gap] + slopes[gap] * (x - hx[gap])
    scale = 1.0 + np.abs(v).max() + np.abs(x).max() * (1.0 + np.abs(slopes).max())
    near = np.flatnonzero(v - chord <= 1e-10 * scale)
    near = near[~np.isin(near, h)]
    if near.size:
        for e in np.unique(gap[near]):
            members = near[gap[near] == e]
            rows = np.flatnonzero((k >= e - window) & (k <= e + window + 1))
            if rows.size:
                vals = np.max(y[rows, None] * x[None, members] - v[None, members], axis=1)
                best[rows] = np.maximum(best[rows], vals)
    return best


def conjugate_grid(g, y_min=None, y_step=None, count=None, method="fast"):
    """Discrete Legendre transform of grid samples onto an output grid."""
    x, v = _finite_samples(g)
    if y_min is None or y_step is None:
        lo, step, cnt = default_dual_grid(g, count)
        y_min = lo if y_min is None else y_min
        y_step = step if y_step is None else y_step
        count = cnt if count is None else count
    count = g.count if count is None else count
    y = y_min + y_step * np.arange(count)
    if method == "fast":
        vals = legendre_fast(x, v, y)
    elif method == "bruteforce":
        vals = legendre_bruteforce(x, v, y)
    else:
        raise ValueError(f"unknown method {method!r}")
    return GridFunction1D(y_min, y_step, vals)
