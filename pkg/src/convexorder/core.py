"""Piecewise-linear convex functions on R^n and the cone operations on them.

A :class:`PLConvexFunction` is ``max_i <phi_i, x> + c_i`` on a closed
polyhedral effective domain and ``+inf`` outside it.  Every operation here is
exact on that representation; the only numerics are the LP solves and the
polyhedral conversions.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError, ImproperFunctionError
from .lp import linprog, OPTIMAL, UNBOUNDED
from .polyhedron import Polyhedron, intersect

LEQ_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class AffineFunctional:
    """x -> <phi, x> + c."""

    phi: np.ndarray
    c: float = 0.0

    def __post_init__(self):
        phi = np.atleast_1d(np.asarray(self.phi, dtype=float))
        if phi.ndim != 1 or phi.size < 1:
            raise ValueError("phi must be a nonempty vector")
        if not (np.all(np.isfinite(phi)) and np.isfinite(self.c)):
            raise ValueError("affine functional entries must be finite")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "c", float(self.c))

    @property
    def n(self):
        return self.phi.size

    def __call__(self, x):
        return np.asarray(x, float) @ self.phi + self.c

    def as_function(self):
        return PLConvexFunction(self.phi[None, :], [self.c])


class PLConvexFunction:
    """Max of finitely many affine pieces, restricted to a polyhedral domain.

    ``slopes`` is (k, n), ``offsets`` is (k,).  ``domain=None`` means all of
    R^n.  Instances are treated as immutable.
    """

    def __init__(self, slopes, offsets, domain=None):
        S = np.atleast_2d(np.asarray(slopes, dtype=float))
        c = np.atleast_1d(np.asarray(offsets, dtype=float)).ravel()
        if S.shape[0] != c.shape[0] or S.shape[0] == 0:
            raise ValueError("need a nonempty, consistent set of pieces")
        if not (np.all(np.isfinite(S)) and np.all(np.isfinite(c))):
            raise ValueError("piece data must be finite")
        if domain is not None and domain.n != S.shape[1]:
            raise DimensionError("domain dimension does not match slopes")
        self.slopes = S
        self.offsets = c
        self.domain = domain

    @property
    def n(self):
        return self.slopes.shape[1]

    @property
    def pieces(self):
        return [AffineFunctional(p, c) for p, c in zip(self.slopes, self.offsets)]

    @classmethod
    def from_pieces(cls, pieces, domain=None):
        pieces = list(pieces)
        return cls(np.array([p.phi for p in pieces]), [p.c for p in pieces], domain)

    @classmethod
    def affine(cls, phi, c=0.0, domain=None):
        phi = np.atleast_1d(np.asarray(phi, float))
        return cls(phi[None, :], [c], domain)

    @classmethod
    def constant(cls, n, c=0.0, domain=None):
        return cls(np.zeros((1, n)), [c], domain)

    @classmethod
    def indicator(cls, P, value=0.0):
        """``value`` on the polyhedron P, +inf elsewhere."""
        return cls(np.zeros((1, P.n)), [value], P)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        single = x.ndim <= 1
        X = x.reshape(1, -1) if single else x
        if X.shape[1] != self.n:
            raise DimensionError(f"point dimension {X.shape[1]} != {self.n}")
        vals = (X @ self.slopes.T + self.offsets).max(axis=1)
        if self.domain is not None:
            vals = np.where(self.domain.contains(X), vals, np.inf)
        return float(vals[0]) if single else vals

    def is_proper(self):
        return self.domain is None or not self.domain.is_empty

    def epigraph(self):
        """Epigraph as a polyhedron in R^{n+1} (last coordinate is the value)."""
        A = np.hstack([self.slopes, -np.ones((len(self.offsets), 1))])
        b = -self.offsets
        if self.domain is not None:
            D = self.domain
            A = np.vstack([A, np.hstack([D.A, np.zeros((len(D.b), 1))])])
            b = np.concatenate([b, D.b])
        return Polyhedron(self.n + 1, A=A, b=b)

    def vertices(self):
        """Points of R^n over which the epigraph has a vertex."""
        return self.epigraph().vertices[:, :-1]

    # affine calculus used by the transforms
    def precompose(self, U, shift=None):
        """y -> f(U y + shift) for invertible U."""
        U = np.atleast_2d(np.asarray(U, float))
        shift = np.zeros(self.n) if shift is None else np.asarray(shift, float)
        slopes = self.slopes @ U
        offsets = self.offsets + self.slopes @ shift
        domain = None
        if self.domain is not None:
            Uinv = np.linalg.inv(U)
            domain = self.domain.translate(-shift).linear_image(Uinv)
        return PLConvexFunction(slopes, offsets, domain)

    def add_affine(self, phi, c=0.0):
        return PLConvexFunction(self.slopes + np.asarray(phi, float), self.offsets + c,
                                self.domain)

    def times(self, alpha):
        if alpha < 0:
            raise ValueError("only nonnegative multiples stay convex")
        if alpha == 0:
            return scale(self, 0.0)
        return PLConvexFunction(self.slopes * alpha, self.offsets * alpha, self.domain)

    def __repr__(self):
        dom = "R^%d" % self.n if self.domain is None else repr(self.domain)
        return f"PLConvexFunction({len(self.offsets)} pieces on {dom})"


def _domain_meet(P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    return intersect(P, Q)


def evaluate(f, x):
    return f(x)


def max2(f, g):
    if f.n != g.n:
        raise DimensionError("dimension mismatch")
    return PLConvexFunction(np.vstack([f.slopes, g.slopes]),
                            np.concatenate([f.offsets, g.offsets]),
                            _domain_meet(f.domain, g.domain))


def sup_family(fs):
    fs = list(fs)
    if not fs:
        raise ValueError("sup of an empty family is not a proper function")
    out = fs[0]
    for g in fs[1:]:
        out = max2(out, g)
    return out


def add(f, g):
    if f.n != g.n:
        raise DimensionError("dimension mismatch")
    slopes = (f.slopes[:, None, :] + g.slopes[None, :, :]).reshape(-1, f.n)
    offsets = (f.offsets[:, None] + g.offsets[None, :]).ravel()
    return PLConvexFunction(slopes, offsets, _domain_meet(f.domain, g.domain))


def scale(f, t):
    if t < 0:
        raise ValueError("scale factor must be nonnegative")
    if t == 0:
        return PLConvexFunction.constant(f.n, 0.0, f.domain)
    return PLConvexFunction(f.slopes * t, f.offsets * t, f.domain)


def is_proper(f):
    return f.is_proper()


def minimize_pl(f):
    """Global infimum of f and a minimizer (``None`` when not attained).

    Epigraph LP: minimize t subject to <phi_i, x> + c_i <= t and x in dom f.
    """
    if not f.is_proper():
        return np.inf, None
    n = f.n
    A = np.hstack([f.slopes, -np.ones((len(f.offsets), 1))])
    b = -f.offsets
    if f.domain is not None:
        A = np.vstack([A, np.hstack([f.domain.A, np.zeros((len(f.domain.b), 1))])])
        b = np.concatenate([b, f.domain.b])
    c = np.zeros(n + 1)
    c[-1] = 1.0
    res = linprog(c, A, b)
    if res.status == UNBOUNDED:
        return -np.inf, None
    if res.status != OPTIMAL:
        return np.inf, None
    x = res.x[:n]
    return float(np.max(f.slopes @ x + f.offsets)), x


def is_leq(f, g, tol=LEQ_TOL):
    """Decide f <= g everywhere.

    True iff dom g is inside dom f and every affine piece of f minorizes g
    on dom g; the latter is one epigraph LP per piece of f.
    """
    if f.n != g.n:
        raise DimensionError("dimension mismatch")
    if not g.is_proper():
        return True
    if not f.is_proper():
        return False
    if f.domain is not None:
        gdom = g.domain if g.domain is not None else Polyhedron.whole_space(g.n)
        if not gdom.subset_of(f.domain, tol):
            return False
    scale_ = 1.0 + max(np.abs(f.offsets).max(), np.abs(g.offsets).max())
    for phi, c in zip(f.slopes, f.offsets):
        gap = PLConvexFunction(g.slopes - phi, g.offsets - c, g.domain)
        val, _ = minimize_pl(gap)
        if val < -tol * scale_:
            return False
    return True


def canonicalize(f, tol=LEQ_TOL):
    """Drop duplicate and redundant pieces; normalize the domain.

    A piece is redundant when the remaining pieces already dominate it on the
    domain (one LP per piece, checked against the current survivors).
    """
    if not f.is_proper():
        return f
    domain = None
    if f.domain is not None:
        domain = f.domain.canonical()
        if len(domain.A) == 0:
            domain = None
    data = np.hstack([f.slopes, f.offsets[:, None]])
    keep = []
    for i, row in enumerate(data):
        if not any(np.max(np.abs(row - data[j])) <= 1e-12 for j in keep):
            keep.append(i)
    idx = list(keep)
    for i in list(idx):
        rest = [j for j in idx if j != i]
        if not rest:
            break
        gap = PLConvexFunction(f.slopes[rest] - f.slopes[i], f.offsets[rest] - f.offsets[i],
                               domain)
        val, _ = minimize_pl(gap)
        if val >= -tol * (1.0 + abs(f.offsets[i])):
            idx = rest
    return PLConvexFunction(f.slopes[idx], f.offsets[idx], domain)


def minorants(f):
    """The generating affine minorants: the irredundant pieces of f."""
    if not f.is_proper():
        raise ImproperFunctionError("improper function has no minorants")
    return canonicalize(f).pieces


def homogenize(f):
    """Sublinear p on R^{n+1} with p(x, 1) = f(x).

    p is the support function of the set of affine minorants of f:
    p(x, r) = max_i <phi_i, x> + r c_i for r >= 0 inside the homogenized
    domain cone, +inf elsewhere.
    """
    if not f.is_proper():
        raise ImproperFunctionError("cannot homogenize an improper function")
    n = f.n
    slopes = np.hstack([f.slopes, f.offsets[:, None]])
    A = [np.eye(1, n + 1, n) * -1.0]
    b = [np.zeros(1)]
    if f.domain is not None:
        A.append(np.hstack([f.domain.A, -f.domain.b[:, None]]))
        b.append(np.zeros(len(f.domain.b)))
    cone = Polyhedron(n + 1, A=np.vstack(A), b=np.concatenate(b))
    return PLConvexFunction(slopes, np.zeros(len(f.offsets)), cone)


def lipschitz_bound(f, x0):
    """|f(x0)| + global Lipschitz constant (exact for PL functions on R^n)."""
    if f.domain is not None and len(f.domain.canonical().A) > 0:
        raise ValueError("Lipschitz bound needs a finite-valued function on all of R^n")
    g = canonicalize(f)
    return abs(g(x0)) + float(np.linalg.norm(g.slopes, axis=1).max())


@dataclass(frozen=True, eq=False)
class GridFunction1D:
    """Samples of a function on the uniform grid x_min + h * arange(N).

    ``+inf`` entries mark points outside the effective domain; the finite
    entries must form one contiguous block.
    """

    x_min: float
    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 2:
            raise ValueError("grid needs at least two nodes")
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if np.any(np.isnan(v)) or np.any(v == -np.inf):
            raise ValueError("values must be finite or +inf")
        fin = np.flatnonzero(np.isfinite(v))
        if fin.size and fin[-1] - fin[0] + 1 != fin.size:
            raise ValueError("finite values must form a contiguous block")
        object.__setattr__(self, "values", v)

    @property
    def count(self):
        return self.values.size

    @property
    def x(self):
        return self.x_min + self.step * np.arange(self.count)

    @classmethod
    def sample(cls, func, x_min, x_max, count):
        x = np.linspace(x_min, x_max, count)
        return cls(x_min, x[1] - x[0], np.array([func(t) for t in x], float))


def lower_hull_indices(x, y):
    """Indices of the lower convex hull of points sorted by x (monotone chain)."""
    hull = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross > 0:
                break
            hull.pop()
        hull.append(i)
    return np.array(hull, dtype=int)


def lsc_hull_grid(g):
    """Lower convex envelope of the finite samples (+inf outside their block)."""
    fin = np.flatnonzero(np.isfinite(g.values))
    if fin.size < 2:
        raise ValueError("need at least two finite samples")
    x = g.x[fin]
    y = g.values[fin]
    h = lower_hull_indices(x, y)
    out = np.full(g.count, np.inf)
    out[fin] = np.minimum(np.interp(x, x[h], y[h]), y)
    return GridFunction1D(g.x_min, g.step, out)
