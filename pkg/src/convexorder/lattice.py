"""Lattices of convex sets and of linear subspaces.

Convex sets are ordered by inclusion with meet = intersection and join =
closed convex hull of the union.  Subspaces use intersection and span.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space, orth, subspace_angles

from .polyhedron import Polyhedron, hull, intersect

ANGLE_TOL = 1e-8


class Subspace:
    """Linear subspace of R^n with an orthonormal basis (columns of ``basis``)."""

    def __init__(self, n, basis=None):
        self.n = int(n)
        B = np.zeros((self.n, 0)) if basis is None else np.asarray(basis, float)
        B = B.reshape(self.n, -1)
        if B.shape[1]:
            B = orth(B, rcond=1e-10)
        self.basis = B

    @classmethod
    def span(cls, vectors):
        """Span of the given vectors (rows)."""
        V = np.atleast_2d(np.asarray(vectors, float))
        return cls(V.shape[1], V.T)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, np.eye(n))

    @property
    def dim(self):
        return self.basis.shape[1]

    def complement(self):
        if self.dim == 0:
            return Subspace.full(self.n)
        return Subspace(self.n, null_space(self.basis.T))

    def projector(self):
        return self.basis @ self.basis.T

    def contains(self, other, tol=ANGLE_TOL):
        if other.dim == 0:
            return True
        resid = other.basis - self.projector() @ other.basis
        return bool(np.linalg.norm(resid, 2) <= tol)

    def equals(self, other, tol=ANGLE_TOL):
        if self.n != other.n or self.dim != other.dim:
            return False
        if self.dim == 0:
            return True
        return bool(subspace_angles(self.basis, other.basis).max() < tol)

    def image(self, M):
        M = np.asarray(M, float)
        return Subspace(M.shape[0], M @ self.basis)

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Segment:
    """[-x, x] (symmetric) or [0, x] (anchored)."""

    endpoint: np.ndarray
    kind: str = "symmetric"

    def __post_init__(self):
        if self.kind not in ("symmetric", "anchored"):
            raise ValueError("kind must be 'symmetric' or 'anchored'")
        object.__setattr__(self, "endpoint", np.asarray(self.endpoint, float).ravel())

    def polyhedron(self):
        x = self.endpoint
        other = -x if self.kind == "symmetric" else np.zeros_like(x)
        return Polyhedron.segment(other, x)


def meet_convex(A, B):
    P = intersect(A, B)
    return P.canonical()


def join_convex(A, B):
    return hull(A, B).canonical()


def meet_sub(M, N):
    if M.n != N.n:
        raise ValueError("dimension mismatch")
    normals = np.hstack([M.complement().basis, N.complement().basis])
    if normals.shape[1] == 0:
        return Subspace.full(M.n)
    return Subspace(M.n, null_space(normals.T, rcond=1e-10))


def join_sub(M, N):
    if M.n != N.n:
        raise ValueError("dimension mismatch")
    return Subspace(M.n, np.hstack([M.basis, N.basis]))


# lattice descriptions used by the isomorphism checker
def _convex_ops(with_origin=False):
    def join(A, B):
        J = hull(A, B)
        if with_origin:
            J = hull(J, Polyhedron.point(np.zeros(A.n)))
        return J.canonical()

    def member(A):
        return (not with_origin) or A.contains_origin

    return dict(meet=meet_convex, join=join, leq=lambda A, B: A.subset_of(B),
                eq=lambda A, B: A.equals(B, 1e-7), member=member)


def _symmetric_ops():
    ops = _convex_ops()
    ops["member"] = lambda A: A.is_symmetric
    return ops


LATTICES = {
    "convex": lambda: _convex_ops(False),
    "convex0": lambda: _convex_ops(True),
    "symmetric": _symmetric_ops,
    "subspace": lambda: dict(meet=meet_sub, join=join_sub, leq=lambda A, B: B.contains(A),
                             eq=lambda A, B: A.equals(B), member=lambda A: True),
}


@dataclass
class LatticeReport:
    samples: int = 0
    meet_violations: int = 0
    join_violations: int = 0
    order_violations: int = 0
    membership_violations: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def violations(self):
        return (self.meet_violations + self.join_violations + self.order_violations
                + self.membership_violations)


def check_lattice_iso(oracle, samples, lattice="convex", max_witnesses=5):
    """Count failures of phi(A ^ B) = phi(A) ^ phi(B), the same for joins,
    and of A <= B <=> phi(A) <= phi(B), over sampled pairs.  Meet and join
    witnesses carry the image of the combined pair and the combination of
    the images.

    ``lattice`` selects the operations: 'convex', 'convex0' (sets containing
    the origin; joins include 0), 'symmetric' or 'subspace'.
    """
    ops = LATTICES[lattice]()
    rep = LatticeReport()

    def note(kind, i, **sets):
        if len(rep.witnesses) < max_witnesses:
            rep.witnesses.append({"kind": kind, "pair": i, **sets})

    for i, (A, B) in enumerate(samples):
        rep.samples += 1
        try:
            fA, fB = oracle(A), oracle(B)
            f_meet, f_join = oracle(ops["meet"](A, B)), oracle(ops["join"](A, B))
        except Exception as exc:
            raise RuntimeError(f"oracle failed on sample pair {i}") from exc
        if not (ops["member"](fA) and ops["member"](fB)):
            rep.membership_violations += 1
            note("membership", i)
        rhs = ops["meet"](fA, fB)
        if not ops["eq"](f_meet, rhs):
            rep.meet_violations += 1
            note("meet", i, image=f_meet, expected=rhs)
        rhs = ops["join"](fA, fB)
        if not ops["eq"](f_join, rhs):
            rep.join_violations += 1
            note("join", i, image=f_join, expected=rhs)
        if ops["leq"](A, B) != ops["leq"](fA, fB) or ops["leq"](B, A) != ops["leq"](fB, fA):
            rep.order_violations += 1
            note("order", i)
    return rep


@dataclass(frozen=True, eq=False)
class Extension:
    body: Polyhedron
    bound: float


def dyadic_ladder(K=8):
    return [2.0 ** k for k in range(K, -K - 1, -1)]


def extend_to_compact(oracle, A, ladder=None, ball=None):
    """Intersection of oracle(A v qB) over the ladder q.

    ``ball`` defaults to the cross-polytope.  The reported bound is
    q_min * radius(oracle(ball)), the Hausdorff error of the truncated ladder
    for linear oracles.
    """
    ladder = dyadic_ladder() if ladder is None else sorted(ladder, reverse=True)
    if not ladder:
        raise ValueError("ladder must be nonempty")
    ball = Polyhedron.cross_polytope(A.n) if ball is None else ball
    out = None
    for q in ladder:
        img = oracle(join_convex(A, ball.scale(q)))
        out = img if out is None else intersect(out, img)
    bound = ladder[-1] * oracle(ball).radius()
    return Extension(out.canonical(), float(bound))
