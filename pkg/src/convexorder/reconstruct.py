"""Recover the linear and affine data behind black-box order transforms.

Each routine probes the oracle on a fixed design (basis directions e_i and
sums e_1 + e_j), fits the map the representation theorems say must exist,
and then validates it on seeded random probes.  Audits are sampled
refutation attempts: passing one does not prove the oracle has the claimed
global property.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles

from .cones import MinkowskiGauge, Seminorm, SublinearFunction, hom_power, hom_root
from .core import PLConvexFunction, max2
from .exceptions import AuditError, NonRepresentableError
from .fenchel import conjugate_pl
from .lattice import Subspace, join_convex
from .polyhedron import Polyhedron, intersect
from .sampling import domain_points, random_pl, random_polytope, random_subspace, rng_from
from .transforms import CanonicalTransform, PRESERVING, REVERSING, apply

AUDIT_DEPTH = 100
TAGS = ("conv", "subl", "mink", "semn", "subspace-lattice", "symm-set-lattice")


class TransformOracle:
    """A callable on one of the tagged cones or lattices, with a call counter."""

    def __init__(self, domain_tag, func, n):
        if domain_tag not in TAGS:
            raise ValueError(f"unknown domain tag {domain_tag!r}")
        self.domain_tag = domain_tag
        self.func = func
        self.n = int(n)
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        return self.func(x)

    def __repr__(self):
        return f"TransformOracle({self.domain_tag}, n={self.n}, calls={self.calls})"


@dataclass(frozen=True, eq=False)
class RecoveredMap:
    matrix: np.ndarray
    scalar_class: str
    residual: float

    def to_dict(self):
        return {"matrix": self.matrix.tolist(), "scalar_class": self.scalar_class,
                "residual": self.residual}


def normalize_scalar(M):
    """Unit Frobenius norm, first nonzero entry of the first nonzero column positive."""
    M = np.asarray(M, float)
    return normalize_sign(M / np.linalg.norm(M))


def normalize_sign(M):
    M = np.asarray(M, float)
    flat = M.T.ravel()
    nz = np.flatnonzero(np.abs(flat) > 1e-12 * np.abs(flat).max())
    return -M if flat[nz[0]] < 0 else M.copy()


def _rel_err(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    both_inf = np.isinf(a) & np.isinf(b) & (np.sign(a) == np.sign(b))
    diff = np.where(both_inf, 0.0, np.abs(a - b))
    diff = np.where(np.isnan(diff), np.inf, diff)
    return diff / (1.0 + np.where(np.isfinite(b), np.abs(b), 0.0))


# affine-function transforms

def _read_affine(g, n, rng, tol=1e-8, what="image"):
    """(phi, c) of an affine function given as a callable; AuditError otherwise."""
    c = g(np.zeros(n))
    E = np.asarray(g(np.eye(n)), float)
    if not (np.isfinite(c) and np.all(np.isfinite(E))):
        raise AuditError(f"{what} is not finite, hence not affine")
    phi = E - c
    X = rng.normal(size=(8, n)) * 2.0
    if np.any(_rel_err(g(X), X @ phi + c) > tol * (1.0 + np.abs(phi).sum())):
        raise AuditError(f"{what} is not affine")
    return phi, float(c)


def _audit_order(oracle, n, mode, depth, rng, points=20):
    """Sampled refutation of the order law on pairs f <= g built by construction."""
    X = rng.normal(size=(points, n)) * 2.0
    for k in range(depth):
        f = random_pl(rng, n, k=int(rng.integers(1, 4)))
        if k % 2:
            g = PLConvexFunction(f.slopes, f.offsets + rng.uniform(0.1, 1.0))
        else:
            g = max2(f, random_pl(rng, n, k=1))
        lo, hi = (oracle(f), oracle(g)) if mode == PRESERVING else (oracle(g), oracle(f))
        a, b = lo(X), hi(X)
        bad = np.asarray(a) > np.asarray(b) + 1e-9 * (1.0 + np.abs(np.where(np.isfinite(b), b, 0)))
        if np.any(bad):
            raise AuditError(f"order law ({mode}) refuted on audit pair {k}")


def action_residual(t, oracle, seed=0, functions=50, points=100):
    """max relative pointwise gap between apply(t, f) and oracle(f) on random f."""
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(functions):
        f = random_pl(rng, t.n)
        ref = oracle(f)
        X = domain_points(rng, ref, points)
        worst = max(worst, float(np.max(_rel_err(apply(t, f)(X), ref(X)))))
    return worst


def identify_preserving(oracle, audit=AUDIT_DEPTH, seed=0, verify=50, tol=1e-8):
    """Recover (alpha, U, x0, phi0, r0) with oracle(f) = alpha f(U . + x0) + <phi0, .> + r0.

    T(0) gives phi0 and r0; S = T - T(0) is linear on affine functions with
    S(1) = alpha and S(<e_i, .>) = <alpha U^T e_i, .> + alpha x0_i.
    """
    n = oracle.n
    rng = rng_from(seed)
    if audit:
        _audit_order(oracle, n, PRESERVING, audit, rng)
    phi0, r0 = _read_affine(oracle(PLConvexFunction.constant(n, 0.0)), n, rng, what="T(0)")

    def S(phi, c):
        p, k = _read_affine(oracle(PLConvexFunction.affine(phi, c)), n, rng)
        return p - phi0, k - r0

    p1, alpha = S(np.zeros(n), 1.0)
    if np.abs(p1).max() > tol * (1.0 + abs(alpha)) or not alpha > 0:
        raise AuditError("S(1) is not a positive constant")
    W = np.empty((n, n))
    kappa = np.empty(n)
    for i in range(n):
        W[:, i], kappa[i] = S(np.eye(n)[i], 0.0)
    # consistency of S as a linear map on random affine probes
    for _ in range(3):
        phi, c = rng.normal(size=n), float(rng.normal())
        p, k = S(phi, c)
        scale = 1.0 + np.abs(W).sum() + abs(alpha)
        if max(np.abs(p - W @ phi).max(), abs(k - kappa @ phi - alpha * c)) > tol * scale:
            raise AuditError("S is not linear on the probes")
    if abs(np.linalg.det(W)) <= 1e-12 * max(1.0, np.abs(W).max()) ** n:
        raise NonRepresentableError("recovered W is singular")
    t = CanonicalTransform(alpha, W.T / alpha, kappa / alpha, phi0, r0, PRESERVING)
    if verify:
        res = action_residual(t, oracle, rng, functions=verify)
        if res > tol:
            raise AuditError(f"action residual {res:.3g} exceeds {tol:g}")
    return t


def identify_reversing(oracle, audit=AUDIT_DEPTH, seed=0, verify=50, tol=1e-6):
    """Recover a reversing canonical transform: f -> oracle(f*) is preserving."""
    n = oracle.n
    rng = rng_from(seed)
    if audit:
        _audit_order(oracle, n, REVERSING, audit, rng)
    inner = TransformOracle("conv", lambda f: oracle(conjugate_pl(f)), n)
    p = identify_preserving(inner, audit=0, seed=rng, verify=0, tol=min(tol, 1e-8))
    t = CanonicalTransform(p.alpha, p.U, p.shift, p.phi0, p.r0, REVERSING)
    if verify:
        res = action_residual(t, oracle, rng, functions=verify)
        if res > tol:
            raise AuditError(f"action residual {res:.3g} exceeds {tol:g}")
    return t


# lattice recoveries

def _fit_pair(v1, vj, w, tol=1e-8):
    """Coefficients (a, b) with w = a v1 + b vj, or NonRepresentableError."""
    M = np.column_stack([v1, vj])
    coef, *_ = np.linalg.lstsq(M, w, rcond=None)
    if np.linalg.norm(M @ coef - w) > tol * (1.0 + np.linalg.norm(w)):
        raise NonRepresentableError("probe image leaves the span predicted by linearity")
    return coef


def recover_linear_subspaces(oracle, seed=0, validate=50, tol=1e-8):
    """lambda with oracle(M) = lambda M, unique up to a nonzero scalar."""
    n = oracle.n
    if n < 2:
        raise ValueError("subspace recovery needs n >= 2")
    rng = rng_from(seed)
    E = np.eye(n)

    def line_image(x):
        img = oracle(Subspace.span(x))
        if img.dim != 1:
            raise NonRepresentableError(f"image of a line has dimension {img.dim}")
        return img.basis[:, 0]

    v = [line_image(E[i]) for i in range(n)]
    cols = [v[0]]
    for j in range(1, n):
        a, b = _fit_pair(v[0], v[j], line_image(E[0] + E[j]))
        if min(abs(a), abs(b)) <= tol:
            raise NonRepresentableError("relative scaling system is inconsistent")
        cols.append((b / a) * v[j])
    lam = normalize_scalar(np.column_stack(cols))
    if abs(np.linalg.det(lam)) <= 1e-12:
        raise NonRepresentableError("recovered map is singular")
    worst = 0.0
    for _ in range(validate):
        M = random_subspace(rng, n)
        img = oracle(M)
        pred = M.image(lam)
        if img.dim != pred.dim:
            raise NonRepresentableError("image dimension differs from the linear prediction")
        worst = max(worst, float(subspace_angles(img.basis, pred.basis).max()))
    if worst > tol:
        raise NonRepresentableError(f"validation angle {worst:.3g} exceeds {tol:g}")
    return RecoveredMap(lam, "up-to-positive-scalar", worst)


def _segment_endpoint(P, tol=1e-9):
    """x with P = [-x, x]; errors for anything else."""
    if not P.is_bounded:
        raise NonRepresentableError("image of a segment is unbounded")
    V = P.canonical().vertices
    if len(V) == 1 and np.linalg.norm(V[0]) <= tol:
        raise NonRepresentableError("segment mapped to {0}")
    if len(V) != 2 or np.linalg.norm(V[0] + V[1]) > tol * (1.0 + np.linalg.norm(V[0])):
        raise NonRepresentableError("image of a symmetric segment is not a symmetric segment")
    return V[0]


def _sym_segment(x):
    x = np.asarray(x, float)
    return Polyhedron.segment(-x, x)


def recover_from_segments(oracle, seed=0, validate=50, tol=1e-8):
    """Lambda with oracle([-x, x]) = [-Lambda x, Lambda x]; sign unobservable."""
    n = oracle.n
    rng = rng_from(seed)
    E = np.eye(n)
    v = [_segment_endpoint(oracle(_sym_segment(E[i]))) for i in range(n)]
    cols = [v[0]]
    for j in range(1, n):
        a, b = _fit_pair(v[0], v[j], _segment_endpoint(oracle(_sym_segment(E[0] + E[j]))))
        if abs(abs(a) - 1.0) > 1e-6 or abs(abs(b) - 1.0) > 1e-6:
            raise NonRepresentableError("segment magnitudes are inconsistent with a linear map")
        cols.append(np.sign(a * b) * v[j])
    Lam = normalize_sign(np.column_stack(cols))
    if abs(np.linalg.det(Lam)) <= 1e-12:
        raise NonRepresentableError("recovered map is singular")
    worst = 0.0
    for _ in range(validate):
        x, x0 = rng.normal(size=n), rng.normal(size=n)
        seg = oracle(_sym_segment(x))
        worst = max(worst, seg.vertex_hausdorff(_sym_segment(Lam @ x)) / (1 + np.linalg.norm(Lam @ x)))
        if n >= 2:
            # the segment rebuilt from a line, a line and a segment
            rebuilt = intersect(oracle(Polyhedron.line(x)),
                                join_convex(oracle(Polyhedron.line(x - x0)),
                                            oracle(_sym_segment(x0))))
            worst = max(worst, rebuilt.canonical().vertex_hausdorff(seg.canonical())
                        / (1 + np.linalg.norm(Lam @ x)))
    if worst > tol:
        raise NonRepresentableError(f"validation residual {worst:.3g} exceeds {tol:g}")
    return RecoveredMap(Lam, "up-to-sign", worst)


def _seminorm_residual(oracle, E, rng, functions=20, points=50):
    worst = 0.0
    for _ in range(functions):
        f = Seminorm(random_polytope(rng, oracle.n, symmetric=True))
        X = rng.normal(size=(points, oracle.n))
        worst = max(worst, float(np.max(_rel_err(oracle(f)(X), f(X @ E.T)))))
    return worst


def recover_seminorm_map(oracle, seed=0, validate=20, tol=1e-9):
    """E (up to sign) with oracle(f)(x) = f(E x) on seminorms.

    The oracle is carried to symmetric dual bodies, C -> dual body of
    oracle(sigma_C), where f(A .) corresponds to C -> A^T C.
    """
    rng = rng_from(seed)
    body_map = TransformOracle("symm-set-lattice",
                               lambda C: oracle(Seminorm(C)).dual_body, oracle.n)
    Lam = recover_from_segments(body_map, seed=rng, validate=10)
    E = normalize_sign(Lam.matrix.T)
    res = _seminorm_residual(oracle, E, rng, functions=validate)
    if res > tol:
        raise AuditError(f"seminorm action residual {res:.3g} exceeds {tol:g}")
    return RecoveredMap(E, "up-to-sign", res)


def _gauge_residual(oracle, E, rng, functions=20, points=50):
    worst = 0.0
    for _ in range(functions):
        f = MinkowskiGauge(random_polytope(rng, oracle.n, solid=True))
        X = rng.normal(size=(points, oracle.n))
        worst = max(worst, float(np.max(_rel_err(oracle(f)(X), f(X @ E.T)))))
    return worst


def recover_mink_map(oracle, seed=0, validate=20, tol=1e-9):
    """E with oracle(f)(x) = f(E x) on gauges; the sign is fixed by [0, e_1]."""
    n = oracle.n
    rng = rng_from(seed)
    semn = TransformOracle("semn", lambda s: Seminorm(oracle(MinkowskiGauge(s.body)).dual_body), n)
    pm = recover_seminorm_map(semn, seed=rng, validate=5, tol=tol).matrix
    # gauge of {x_1 <= 1} is max(0, x_1): its dual body is the anchored segment [0, e_1]
    half = MinkowskiGauge(Polyhedron(n, A=np.eye(1, n), b=[1.0]))
    img = oracle(half)
    X = rng.normal(size=(50, n))
    fits = [float(np.max(_rel_err(img(X), half(X @ (s * pm).T)))) for s in (1.0, -1.0)]
    ok = [f <= tol for f in fits]
    if ok.count(True) != 1:
        raise NonRepresentableError("anchored-segment probe matches neither sign")
    E = pm if ok[0] else -pm
    res = _gauge_residual(oracle, E, rng, functions=validate)
    if res > tol:
        raise AuditError(f"gauge action residual {res:.3g} exceeds {tol:g}")
    return RecoveredMap(E, "exact", res)


def _single_point(P, what):
    V = P.canonical().vertices
    if len(V) != 1 or len(P.rays):
        raise AuditError(f"{what} is not linear")
    return V[0]


def recover_sublinear_map(oracle, seed=0, validate=20, tol=1e-9):
    """(U, phi0) with oracle(f)(x) = f(U x) + <phi0, x> on sublinear f."""
    n = oracle.n
    rng = rng_from(seed)

    def image_point(c, what="image of a linear functional"):
        return _single_point(oracle(SublinearFunction(Polyhedron.point(c))).body, what)

    phi0 = image_point(np.zeros(n), "T(0)")
    M = np.column_stack([image_point(e) - phi0 for e in np.eye(n)])
    for _ in range(3):
        c = rng.normal(size=n)
        if np.linalg.norm(image_point(c) - phi0 - M @ c) > tol * (1 + np.abs(M).sum()) * 10:
            raise AuditError("S is not linear on the probes")
    U = M.T
    if abs(np.linalg.det(U)) <= 1e-12:
        raise NonRepresentableError("recovered U is singular")
    worst = 0.0
    for _ in range(validate):
        f = SublinearFunction(random_polytope(rng, n))
        X = rng.normal(size=(50, n))
        worst = max(worst, float(np.max(_rel_err(oracle(f)(X), f(X @ U.T) + X @ phi0))))
    if worst > tol:
        raise AuditError(f"sublinear action residual {worst:.3g} exceeds {tol:g}")
    return RecoveredMap(U, "exact", worst), phi0


def recover_homogeneous_map(oracle, degree, mode="positive", seed=0, tol=1e-9):
    """Reduce a degree-p oracle to gauges (positive) or seminorms (absolute)."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    n = oracle.n
    if mode == "positive":
        inner = TransformOracle("mink", lambda k: hom_root(oracle(hom_power(k, degree))), n)
        return recover_mink_map(inner, seed=seed, tol=tol)
    if mode == "absolute":
        inner = TransformOracle("semn", lambda k: hom_root(oracle(hom_power(k, degree))), n)
        return recover_seminorm_map(inner, seed=seed, tol=tol)
    raise ValueError("mode must be 'positive' or 'absolute'")
