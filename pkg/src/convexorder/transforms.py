"""Canonical fully order preserving and order reversing transforms.

preserving:  (Tf)(y) = alpha f(U y + x0) + <phi0, y> + r0
reversing:   (Tf)(y) = alpha f*(U y + x0*) + <phi0, y> + r0

U acts on R^n with the standard inner product identifying R^n with its dual.
"""

from dataclasses import dataclass

import numpy as np

from .fenchel import conjugate_pl

PRESERVING = "preserving"
REVERSING = "reversing"


@dataclass(frozen=True, eq=False)
class CanonicalTransform:
    alpha: float
    U: np.ndarray
    shift: np.ndarray
    phi0: np.ndarray
    r0: float = 0.0
    mode: str = PRESERVING

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.U, float))
        n = U.shape[0]
        if U.shape != (n, n):
            raise ValueError("U must be square")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if abs(np.linalg.det(U)) <= 1e-12:
            raise ValueError("U is singular")
        if self.mode not in (PRESERVING, REVERSING):
            raise ValueError(f"unknown mode {self.mode!r}")
        shift = np.asarray(self.shift, float).reshape(n)
        phi0 = np.asarray(self.phi0, float).reshape(n)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "phi0", phi0)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "r0", float(self.r0))

    @property
    def n(self):
        return self.U.shape[0]

    @classmethod
    def identity(cls, n, mode=PRESERVING):
        return cls(1.0, np.eye(n), np.zeros(n), np.zeros(n), 0.0, mode)

    def apply(self, f):
        return apply(self, f)

    def __call__(self, f):
        return apply(self, f)

    def params(self):
        return (self.alpha, self.U, self.shift, self.phi0, self.r0)

    def to_dict(self):
        return {"alpha": self.alpha, "U": self.U.tolist(), "shift": self.shift.tolist(),
                "phi0": self.phi0.tolist(), "r0": self.r0, "mode": self.mode}

    @classmethod
    def from_dict(cls, d):
        return cls(d["alpha"], d["U"], d["shift"], d["phi0"], d.get("r0", 0.0),
                   d.get("mode", PRESERVING))

    def __repr__(self):
        return f"CanonicalTransform(n={self.n}, alpha={self.alpha:g}, mode={self.mode})"


def _affine_part(t, f):
    g = f.precompose(t.U, t.shift).times(t.alpha)
    return g.add_affine(t.phi0, t.r0)


def apply(t, f):
    if f.n != t.n:
        raise ValueError("transform and function dimensions differ")
    if t.mode == REVERSING:
        f = conjugate_pl(f)
    return _affine_part(t, f)


def _with_mode(t, mode):
    return CanonicalTransform(t.alpha, t.U, t.shift, t.phi0, t.r0, mode)


def invert(t):
    if t.mode != PRESERVING:
        raise ValueError("only preserving transforms are inverted directly; use compose")
    Ui = np.linalg.inv(t.U)
    a = t.alpha
    return CanonicalTransform(1.0 / a, Ui, -Ui @ t.shift, -Ui.T @ t.phi0 / a,
                              (t.phi0 @ Ui @ t.shift - t.r0) / a, PRESERVING)


def _compose_affine(s, t):
    """Parameters of the affine part of s after t (both read as preserving)."""
    alpha = s.alpha * t.alpha
    U = t.U @ s.U
    shift = t.U @ s.shift + t.shift
    phi0 = s.alpha * s.U.T @ t.phi0 + s.phi0
    r0 = s.alpha * (t.phi0 @ s.shift + t.r0) + s.r0
    return alpha, U, shift, phi0, r0


def conjugate_side(t):
    """Preserving Q with (P_t f)* = P_Q(f*) for the affine part P_t of t."""
    Ui = np.linalg.inv(t.U)
    a = t.alpha
    return CanonicalTransform(a, Ui.T / a, -Ui.T @ t.phi0 / a, -Ui @ t.shift,
                              t.phi0 @ Ui @ t.shift - t.r0, PRESERVING)


def compose(s, t):
    """Transform f -> s(t(f))."""
    if s.n != t.n:
        raise ValueError("dimension mismatch")
    if s.mode == PRESERVING:
        return CanonicalTransform(*_compose_affine(s, t), t.mode)
    # s reversing: conjugating t's output moves t's affine part onto f*
    mode = REVERSING if t.mode == PRESERVING else PRESERVING
    return CanonicalTransform(*_compose_affine(s, conjugate_side(t)), mode)


def fenchel_transform(n):
    return CanonicalTransform.identity(n, REVERSING)


def param_errors(s, t):
    """Relative errors of the five parameters of s against t."""
    def rel(a, b):
        a, b = np.asarray(a, float), np.asarray(b, float)
        return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(b)))
    return {"alpha": rel(s.alpha, t.alpha), "U": rel(s.U, t.U), "shift": rel(s.shift, t.shift),
            "phi0": rel(s.phi0, t.phi0), "r0": rel(s.r0, t.r0)}
