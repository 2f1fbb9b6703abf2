"""Convex polyhedra with lazily converted V- and H-representations.

Both conversions go through one primitive, :func:`cone_dual`, which describes
the polar ``{y : G y <= 0}`` of a finitely generated cone.  A polyhedron
``conv(V) + cone(R)`` is handled by homogenizing to the cone generated by
``(v, 1)`` and ``(r, 0)``; the H-representation ``A x <= b`` is handled by
the cone ``{(x, t) : A x - b t <= 0, t >= 0}``.
"""

import itertools

import numpy as np
from scipy.spatial import ConvexHull, QhullError

TOL = 1e-9


def _unit_rows(M, tol=TOL):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return M.reshape(0, M.shape[1] if M.ndim == 2 else 0)
    norms = np.linalg.norm(M, axis=1)
    keep = norms > tol
    return M[keep] / norms[keep, None]


def _dedupe(rows, tol=1e-8):
    out = []
    for r in rows:
        if not any(np.max(np.abs(r - o)) <= tol for o in out):
            out.append(r)
    if not out:
        return np.zeros((0, rows.shape[1]))
    return np.array(out)


def _polar_rays_bruteforce(Gp, tol=TOL):
    """Extreme rays of the pointed cone {z : Gp z <= 0} by enumeration.

    Every extreme ray is the null vector of r-1 independent tight rows, so
    all (r-1)-subsets are tried; null vectors come from signed cofactors.
    """
    k, r = Gp.shape
    if r == 1:
        cands = np.array([[1.0], [-1.0]])
    else:
        combos = np.array(list(itertools.combinations(range(k), r - 1)))
        if combos.size == 0:
            return np.zeros((0, r))
        blocks = []
        for start in range(0, len(combos), 20000):
            sub = Gp[combos[start:start + 20000]]
            null = np.empty((sub.shape[0], r))
            for j in range(r):
                minor = np.delete(sub, j, axis=2)
                null[:, j] = (-1) ** j * np.linalg.det(minor)
            blocks.append(null)
        cands = np.vstack(blocks)
        norms = np.linalg.norm(cands, axis=1)
        cands = cands[norms > 1e-10] / norms[norms > 1e-10, None]
        cands = np.vstack([cands, -cands])
    ok = np.all(Gp @ cands.T <= tol, axis=0)
    return _dedupe(cands[ok])


def _polar_rays_qhull(Gp, tol=TOL):
    """Same as the brute-force routine, via facets of conv({0} u G).

    The facets of that polytope passing through the origin are exactly the
    facets of cone(G); their outward normals are the polar's extreme rays.
    """
    pts = np.vstack([np.zeros(Gp.shape[1]), Gp])
    hull = ConvexHull(pts)
    eq = hull.equations
    through_origin = np.abs(eq[:, -1]) <= 1e-10
    normals = _unit_rows(eq[through_origin, :-1])
    if normals.size == 0:
        return np.zeros((0, Gp.shape[1]))
    normals = _dedupe(normals)
    ok = np.all(Gp @ normals.T <= 1e-7, axis=0)
    return normals[ok]


def cone_dual(G, tol=TOL, method="auto"):
    """Polar of cone(G): returns ``(R, L)`` with ``{y : G y <= 0} = cone(R) + span(L)``.

    ``R`` holds unit extreme rays orthogonal to ``span(L)``; ``L`` is an
    orthonormal basis of the orthogonal complement of ``span(G)``.
    """
    G = np.atleast_2d(np.asarray(G, dtype=float))
    m = G.shape[1]
    G = _unit_rows(G, tol)
    if G.shape[0] == 0:
        return np.zeros((0, m)), np.eye(m)
    _, s, Vt = np.linalg.svd(G, full_matrices=True)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    B = Vt[:r].T
    L = Vt[r:]
    Gp = G @ B
    if r == 1:
        col = Gp[:, 0]
        if np.all(col <= tol):
            Z = np.array([[1.0]])
        elif np.all(col >= -tol):
            Z = np.array([[-1.0]])
        else:
            Z = np.zeros((0, 1))
    elif method == "bruteforce":
        Z = _polar_rays_bruteforce(Gp, tol)
    else:
        try:
            Z = _polar_rays_qhull(Gp, tol)
        except QhullError:
            Z = _polar_rays_bruteforce(Gp, tol)
    return Z @ B.T, L


def _h_to_v(A, b, tol=TOL):
    n = A.shape[1]
    G = np.vstack([np.hstack([A, -b[:, None]]), np.eye(1, n + 1, n) * -1.0])
    R, L = cone_dual(G, tol)
    t = R[:, -1] if R.size else np.zeros(0)
    verts = R[t > tol, :n] / t[t > tol, None]
    rays = [R[t <= tol, :n]]
    if L.size:
        rays += [L[:, :n], -L[:, :n]]
    rays = _unit_rows(np.vstack(rays).reshape(-1, n), tol)
    if len(verts) == 0:
        return np.zeros((0, n)), np.zeros((0, n))
    return _dedupe(verts), _dedupe(rays) if rays.size else rays.reshape(0, n)


def _v_to_h(V, R, tol=TOL):
    n = V.shape[1]
    G = np.vstack([np.hstack([V, np.ones((len(V), 1))]),
                   np.hstack([R, np.zeros((len(R), 1))])])
    Rd, L = cone_dual(G, tol)
    # cone(G) = {z : Rd z <= 0, L z = 0}; set t = 1
    rows = [Rd, L, -L] if L.size else [Rd]
    H = np.vstack(rows)
    A, b = H[:, :n], -H[:, n]
    norms = np.linalg.norm(A, axis=1)
    keep = norms > tol
    return A[keep] / norms[keep, None], b[keep] / norms[keep]


class Polyhedron:
    """Closed convex polyhedron in R^n.

    V-representation: ``conv(vertices) + cone(rays)`` (a line is stored as a
    pair of opposite rays).  H-representation: ``A x <= b`` with unit rows.
    Whichever representation is missing is computed on first access.
    """

    __array_ufunc__ = None

    def __init__(self, n, vertices=None, rays=None, A=None, b=None):
        self.n = int(n)
        if self.n < 1:
            raise ValueError("ambient dimension must be >= 1")
        self._V = self._R = self._A = self._b = None
        if vertices is not None or rays is not None:
            V = np.asarray(vertices if vertices is not None else [], float)
            self._V = V.reshape(-1, self.n)
            R = np.asarray(rays if rays is not None else [], float).reshape(-1, self.n)
            self._R = _unit_rows(R) if R.size else R
            if len(self._V) == 0 and len(self._R):
                raise ValueError("rays need at least one vertex")
        if A is not None:
            A = np.asarray(A, float).reshape(-1, self.n)
            b = np.asarray(b, float).ravel()
            if A.shape[0] != b.shape[0]:
                raise ValueError("A and b row counts differ")
            norms = np.linalg.norm(A, axis=1)
            zero = norms <= TOL
            if np.any(b[zero] < -TOL):
                A, b = np.zeros((1, self.n)), np.array([-1.0])
            else:
                A, b = A[~zero] / norms[~zero, None], b[~zero] / norms[~zero]
            self._A, self._b = A, b
        if self._V is None and self._A is None:
            raise ValueError("need a V- or H-representation")

    # construction helpers
    @classmethod
    def from_vertices(cls, vertices, rays=None):
        V = np.atleast_2d(np.asarray(vertices, float))
        return cls(V.shape[1], vertices=V, rays=rays)

    @classmethod
    def from_halfspaces(cls, A, b):
        A = np.atleast_2d(np.asarray(A, float))
        return cls(A.shape[1], A=A, b=b)

    @classmethod
    def whole_space(cls, n):
        return cls(n, A=np.zeros((0, n)), b=np.zeros(0))

    @classmethod
    def empty(cls, n):
        return cls(n, vertices=np.zeros((0, n)))

    @classmethod
    def point(cls, p):
        return cls.from_vertices(np.atleast_2d(p))

    @classmethod
    def box(cls, lo, hi):
        lo, hi = np.asarray(lo, float), np.asarray(hi, float)
        n = lo.size
        A = np.vstack([np.eye(n), -np.eye(n)])
        return cls(n, A=A, b=np.concatenate([hi, -lo]))

    @classmethod
    def cube(cls, n, radius=1.0):
        return cls.box(-radius * np.ones(n), radius * np.ones(n))

    @classmethod
    def cross_polytope(cls, n, radius=1.0):
        I = np.eye(n) * radius
        return cls.from_vertices(np.vstack([I, -I]))

    @classmethod
    def segment(cls, a, b):
        return cls.from_vertices(np.vstack([a, b]))

    @classmethod
    def line(cls, direction):
        d = np.asarray(direction, float)
        return cls(d.size, vertices=np.zeros((1, d.size)), rays=np.vstack([d, -d]))

    # representations
    def _ensure_v(self):
        if self._V is None:
            self._V, self._R = _h_to_v(self._A, self._b)

    def _ensure_h(self):
        if self._A is None:
            if len(self._V) == 0:
                self._A, self._b = np.zeros((1, self.n)), np.array([-1.0])
            else:
                self._A, self._b = _v_to_h(self._V, self._R)

    @property
    def vertices(self):
        self._ensure_v()
        return self._V

    @property
    def rays(self):
        self._ensure_v()
        return self._R

    @property
    def A(self):
        self._ensure_h()
        return self._A

    @property
    def b(self):
        self._ensure_h()
        return self._b

    @property
    def halfspaces(self):
        return list(zip(self.A, self.b))

    def canonical(self):
        """Minimal V- and H-representations of the same set."""
        if self.is_empty:
            return Polyhedron.empty(self.n)
        A, b = _v_to_h(self.vertices, self.rays)
        V, R = _h_to_v(A, b)
        P = Polyhedron(self.n, vertices=V, rays=R)
        P._A, P._b = A, b
        return P

    # flags
    @property
    def is_empty(self):
        return len(self.vertices) == 0

    @property
    def is_bounded(self):
        return len(self.rays) == 0

    @property
    def contains_origin(self):
        return self.contains(np.zeros(self.n))

    @property
    def is_symmetric(self):
        if self.is_empty:
            return True
        return self.subset_of(self.linear_image(-np.eye(self.n)))

    @property
    def flags(self):
        return {"bounded": self.is_bounded, "contains_origin": self.contains_origin,
                "symmetric": self.is_symmetric, "empty": self.is_empty}

    # queries
    def contains(self, x, tol=1e-9):
        """Membership test; ``x`` may be a single point or an (m, n) batch."""
        x = np.asarray(x, float)
        single = x.ndim == 1
        X = np.atleast_2d(x)
        if X.shape[1] != self.n:
            raise ValueError(f"point dimension {X.shape[1]} != {self.n}")
        slack = X @ self.A.T - self.b
        ok = np.all(slack <= tol * (1.0 + np.abs(self.b)), axis=1)
        return bool(ok[0]) if single else ok

    def support(self, x):
        """Support function sup_{c in P} <c, x>; +inf along unbounded rays."""
        x = np.asarray(x, float)
        single = x.ndim == 1
        X = np.atleast_2d(x)
        if self.is_empty:
            vals = np.full(len(X), -np.inf)
        else:
            vals = (X @ self.vertices.T).max(axis=1)
            if len(self.rays):
                along = X @ self.rays.T
                scale = 1.0 + np.linalg.norm(X, axis=1)
                vals = np.where(np.any(along > 1e-9 * scale[:, None], axis=1), np.inf, vals)
        return float(vals[0]) if single else vals

    def subset_of(self, other, tol=1e-9):
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        if not np.all(other.contains(self.vertices, tol)):
            return False
        if len(self.rays):
            if np.any(self.rays @ other.A.T > tol):
                return False
        return True

    def equals(self, other, tol=1e-9):
        return self.subset_of(other, tol) and other.subset_of(self, tol)

    def vertex_hausdorff(self, other):
        """Hausdorff distance between the two vertex sets (bounded bodies)."""
        P, Q = self.vertices, other.vertices
        if len(P) == 0 or len(Q) == 0:
            return 0.0 if len(P) == len(Q) else np.inf
        D = np.linalg.norm(P[:, None, :] - Q[None, :, :], axis=2)
        return float(max(D.min(axis=1).max(), D.min(axis=0).max()))

    def radius(self):
        """Largest vertex norm (bounded bodies)."""
        if not self.is_bounded:
            return np.inf
        return float(np.linalg.norm(self.vertices, axis=1).max()) if len(self.vertices) else 0.0

    # maps
    def linear_image(self, M):
        M = np.atleast_2d(np.asarray(M, float))
        if M.shape[1] != self.n:
            raise ValueError("matrix width does not match dimension")
        R = self.rays @ M.T
        R = _unit_rows(R) if R.size else R.reshape(0, M.shape[0])
        P = Polyhedron(M.shape[0], vertices=self.vertices @ M.T, rays=R)
        if M.shape[0] == M.shape[1] and self._A is not None \
                and abs(np.linalg.det(M)) > 1e-12:
            A = self._A @ np.linalg.inv(M)
            norms = np.linalg.norm(A, axis=1)
            P._A, P._b = A / norms[:, None], self._b / norms
        return P

    def translate(self, t):
        t = np.asarray(t, float)
        P = Polyhedron(self.n, vertices=self.vertices + t, rays=self.rays)
        if self._A is not None:
            P._A, P._b = self._A, self._b + self._A @ t
        return P

    def scale(self, s):
        if s <= 0:
            raise ValueError("scale factor must be positive")
        P = Polyhedron(self.n, vertices=self.vertices * s, rays=self.rays)
        if self._A is not None:
            P._A, P._b = self._A, self._b * s
        return P

    def __repr__(self):
        if self._V is not None:
            return f"Polyhedron(n={self.n}, {len(self._V)} vertices, {len(self._R)} rays)"
        return f"Polyhedron(n={self.n}, {len(self._A)} halfspaces)"


def intersect(P, Q):
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    return Polyhedron(P.n, A=np.vstack([P.A, Q.A]), b=np.concatenate([P.b, Q.b]))


def hull(P, Q):
    """Closed convex hull of the union."""
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    if P.is_empty:
        return Q
    if Q.is_empty:
        return P
    return Polyhedron(P.n, vertices=np.vstack([P.vertices, Q.vertices]),
                      rays=np.vstack([P.rays, Q.rays]))


def polar(D):
    """Polar body {y : <y, x> <= 1 for all x in D}, as an H-representation."""
    if D.is_empty:
        return Polyhedron.whole_space(D.n)
    return Polyhedron(D.n, A=np.vstack([D.vertices, D.rays]),
                      b=np.concatenate([np.ones(len(D.vertices)), np.zeros(len(D.rays))]))
