"""Seeded random generators for functions, bodies, transforms and subspaces."""

import numpy as np

from .core import PLConvexFunction, is_leq
from .polyhedron import Polyhedron
from .transforms import CanonicalTransform, PRESERVING
from .lattice import Subspace


def rng_from(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_gl(rng, n, cond_max=50.0):
    """Random invertible matrix with condition number at most cond_max."""
    while True:
        A = rng.normal(size=(n, n))
        if np.linalg.cond(A) <= cond_max:
            return A


def random_pl(rng, n, k=None, domain=None):
    """Random max of k affine pieces; ``domain`` may be None, 'box' or a Polyhedron."""
    k = int(rng.integers(2, 7)) if k is None else k
    slopes = rng.normal(size=(k, n))
    offsets = rng.normal(size=k)
    if isinstance(domain, str):
        lo = -rng.uniform(0.5, 2.0, n)
        hi = rng.uniform(0.5, 2.0, n)
        domain = Polyhedron.box(lo, hi)
    return PLConvexFunction(slopes, offsets, domain)


def random_polytope(rng, n, m=None, symmetric=False, solid=False, radius=1.0):
    """conv of m random points; ``solid`` adds a small ball around the origin."""
    m = int(rng.integers(n + 1, 3 * n + 4)) if m is None else m
    V = rng.normal(size=(m, n)) * radius
    if symmetric:
        V = np.vstack([V, -V])
    if solid:
        r = 0.25 * radius
        V = np.vstack([V, r * np.eye(n), -r * np.eye(n)])
    return Polyhedron.from_vertices(V).canonical()


def random_subspace(rng, n, k=None):
    k = int(rng.integers(1, n)) if k is None else k
    return Subspace(n, rng.normal(size=(n, k)))


def random_transform(rng, n, mode=PRESERVING, cond_max=20.0):
    return CanonicalTransform(float(rng.uniform(0.5, 2.0)), random_gl(rng, n, cond_max),
                              rng.normal(size=n), rng.normal(size=n), float(rng.normal()),
                              mode)


def ordered_pair(rng, n, certify=True):
    """A pair (f, g) with f <= g everywhere.

    g is random on a box; f keeps a subset of g's pieces lowered by a
    nonnegative constant, plus optionally an affine minorant of g, on a
    domain that contains g's.
    """
    g = random_pl(rng, n, domain="box" if rng.random() < 0.5 else None)
    k = len(g.offsets)
    keep = rng.random(k) < 0.6
    keep[rng.integers(k)] = True
    slopes = g.slopes[keep]
    offsets = g.offsets[keep] - rng.uniform(0.0, 1.0)
    if rng.random() < 0.5:
        # convex combination of two pieces, lowered: still below g
        i, j = rng.integers(k, size=2)
        lam = rng.random()
        slopes = np.vstack([slopes, lam * g.slopes[i] + (1 - lam) * g.slopes[j]])
        offsets = np.append(offsets, lam * g.offsets[i] + (1 - lam) * g.offsets[j]
                            - rng.uniform(0.0, 0.5))
    f_dom = None
    if g.domain is not None and rng.random() < 0.5:
        f_dom = g.domain.scale(1.5)
    f = PLConvexFunction(slopes, offsets, f_dom)
    if certify and not is_leq(f, g):
        raise AssertionError("generated pair is not ordered")
    return f, g


def domain_points(rng, f, count, spread=3.0):
    """Points of dom f: convex combinations of domain vertices plus ray steps."""
    if f.domain is None:
        return rng.normal(size=(count, f.n)) * spread
    V, R = f.domain.vertices, f.domain.rays
    W = rng.dirichlet(np.ones(len(V)), size=count)
    X = W @ V
    if len(R):
        X = X + rng.exponential(spread, size=(count, len(R))) @ R
    return X
