"""Sublinear functions, Minkowski gauges, seminorms and their bodies.

Every object here carries a polyhedral body as its primary datum, so the
correspondence between a sublinear function and its body is exact:

* ``SublinearFunction(C)`` is the support function of C;
* ``MinkowskiGauge(D)`` is the gauge of D, equal to the support function of
  the polar of D;
* ``Seminorm(C)`` is the support function of a symmetric body C.
"""

from dataclasses import dataclass

import numpy as np

from .core import PLConvexFunction
from .exceptions import NotHomogeneousError
from .polyhedron import Polyhedron, polar

HOMOGENEITY_TOL = 1e-9


def _as_points(x, n):
    x = np.asarray(x, float)
    single = x.ndim <= 1
    X = x.reshape(1, -1) if single else x
    if X.shape[1] != n:
        raise ValueError(f"point dimension {X.shape[1]} != {n}")
    return X, single


def _out(vals, single):
    return float(vals[0]) if single else vals


class SublinearFunction:
    """x -> sup_{c in body} <c, x>."""

    def __init__(self, body):
        if body.is_empty:
            raise ValueError("support function of the empty set is not proper")
        self.body = body

    @property
    def n(self):
        return self.body.n

    def __call__(self, x):
        X, single = _as_points(x, self.n)
        return _out(np.atleast_1d(self.body.support(X)), single)

    def precompose(self, U):
        """x -> p(U x), the support function of U^T C."""
        return SublinearFunction(self.body.linear_image(np.asarray(U, float).T))

    def add_linear(self, phi):
        return SublinearFunction(self.body.translate(phi))

    def as_pl(self):
        """The same function as a :class:`PLConvexFunction` (domain is a cone)."""
        C = self.body
        dom = None
        if len(C.rays):
            dom = Polyhedron(self.n, A=C.rays, b=np.zeros(len(C.rays)))
        return PLConvexFunction(C.vertices, np.zeros(len(C.vertices)), dom)

    def __repr__(self):
        return f"SublinearFunction({self.body!r})"


class MinkowskiGauge:
    """Gauge x -> inf{lam > 0 : x in lam D} of a closed convex D containing 0."""

    def __init__(self, body):
        if not body.contains_origin:
            raise ValueError("gauge body must contain the origin")
        self.body = body

    @classmethod
    def from_dual_body(cls, C):
        return cls(polar(C))

    @property
    def n(self):
        return self.body.n

    @property
    def dual_body(self):
        return polar(self.body)

    def __call__(self, x):
        return gauge(self.body, x)

    def precompose(self, E):
        """x -> k(E x), the gauge of E^{-1} D."""
        return MinkowskiGauge(self.body.linear_image(np.linalg.inv(np.asarray(E, float))))

    def __repr__(self):
        return f"MinkowskiGauge({self.body!r})"


class Seminorm:
    """Support function of a closed symmetric convex body."""

    def __init__(self, dual_body):
        if dual_body.is_empty or not dual_body.is_symmetric:
            raise ValueError("seminorm needs a nonempty symmetric dual body")
        self.dual_body = dual_body

    @classmethod
    def from_body(cls, D):
        """Seminorm whose unit ball is the symmetric body D."""
        return cls(polar(D))

    @property
    def n(self):
        return self.dual_body.n

    @property
    def body(self):
        return polar(self.dual_body)

    def __call__(self, x):
        X, single = _as_points(x, self.n)
        return _out(np.atleast_1d(self.dual_body.support(X)), single)

    def precompose(self, E):
        return Seminorm(self.dual_body.linear_image(np.asarray(E, float).T))

    def is_finite(self):
        return self.dual_body.is_bounded

    def __repr__(self):
        return f"Seminorm({self.dual_body!r})"


@dataclass(frozen=True, eq=False)
class HomogeneousFunction:
    """base(x) ** degree for a gauge or seminorm base."""

    base: object
    degree: float

    @property
    def mode(self):
        return "absolute" if isinstance(self.base, Seminorm) else "positive"

    @property
    def n(self):
        return self.base.n

    def __call__(self, x):
        return np.power(self.base(x), self.degree)

    def precompose(self, E):
        return HomogeneousFunction(self.base.precompose(E), self.degree)


def support_function(C):
    return SublinearFunction(C)


def _check_homogeneous(p, n, rng_seed=0, count=100, tol=HOMOGENEITY_TOL):
    X = np.random.default_rng(rng_seed).normal(size=(count, n))
    base = np.asarray(p(X), float)
    for t in (2.0, 0.5):
        scaled = np.asarray(p(t * X), float)
        fin = np.isfinite(base)
        if np.any(np.isfinite(scaled) != fin):
            raise NotHomogeneousError(f"finiteness changes under scaling by {t}")
        err = np.abs(scaled[fin] - t * base[fin])
        if np.any(err > tol * (1.0 + np.abs(t * base[fin]))):
            raise NotHomogeneousError(f"p(t x) != t p(x) at t = {t}")
    if abs(p(np.zeros(n))) > tol:
        raise NotHomogeneousError("p(0) != 0")


def body_of(p):
    """The closed convex body whose support function is p.

    For a PL sublinear p = max <phi_i, .> on the cone {a_j . x <= 0} the body
    is conv{phi_i} + cone{a_j}.
    """
    if isinstance(p, SublinearFunction):
        return p.body
    if isinstance(p, Seminorm):
        return p.dual_body
    if not isinstance(p, PLConvexFunction):
        raise TypeError("body_of expects a sublinear or PL convex function")
    _check_homogeneous(p, p.n)
    rays = None
    if p.domain is not None:
        rays = p.domain.A
    return Polyhedron(p.n, vertices=p.slopes, rays=rays).canonical()


def gauge(D, x):
    """Gauge of D (0 in D) at x, from the H-representation of D.

    Along the ray through x the constraint a . (lam x) <= b gives
    lam >= a.x / b when b > 0, and forbids a.x > 0 when b = 0.
    """
    if not D.contains_origin:
        raise ValueError("gauge body must contain the origin")
    X, single = _as_points(x, D.n)
    A, b = D.A, D.b
    ax = X @ A.T
    scale = 1.0 + np.linalg.norm(X, axis=1)
    pos = b > 1e-12
    vals = np.zeros(len(X))
    if pos.any():
        vals = np.maximum(vals, (ax[:, pos] / b[pos]).max(axis=1))
    if (~pos).any():
        blocked = np.any(ax[:, ~pos] > 1e-9 * scale[:, None], axis=1)
        vals = np.where(blocked, np.inf, vals)
    return _out(vals, single)


def hom_power(k, p):
    if p < 1:
        raise ValueError("degree must be >= 1")
    return HomogeneousFunction(k, float(p))


def hom_root(f):
    return f.base
