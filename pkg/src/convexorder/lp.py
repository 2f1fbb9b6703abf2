"""Dense two-phase simplex with Bland's anti-cycling rule.

Small problems only: every variable is free, constraints are ``A_ub x <= b_ub``
and ``A_eq x = b_eq``.  The tableau is a dense numpy array.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

FEAS_TOL = 1e-9


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[np.ndarray]
    fun: float
    iterations: int = 0


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    col_vals = T[:, col].copy()
    col_vals[row] = 0.0
    T -= np.outer(col_vals, T[row])
    basis[row] = col


def _simplex(T, basis, n_cols, tol, max_iter):
    """Run Bland's-rule simplex on tableau T (objective row last).

    Only the first ``n_cols`` columns may enter.  Returns (status, iters).
    """
    it = 0
    m = T.shape[0] - 1
    while it < max_iter:
        reduced = T[-1, :n_cols]
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            return OPTIMAL, it
        col = candidates[0]
        column = T[:m, col]
        positive = np.flatnonzero(column > tol)
        if positive.size == 0:
            return UNBOUNDED, it
        ratios = T[positive, -1] / column[positive]
        best = ratios.min()
        # ties within tolerance: smallest basic variable index leaves
        tied = positive[ratios <= best + tol * max(1.0, abs(best))]
        row = tied[np.argmin(np.asarray(basis)[tied])]
        _pivot(T, basis, row, col)
        it += 1
    raise RuntimeError("simplex iteration limit reached")


def linprog(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, tol=FEAS_TOL,
            max_iter=5000):
    """Minimize ``c @ x`` over free ``x`` subject to the given constraints.

    Returns an :class:`LPResult`; ``fun`` is ``-inf`` when unbounded and
    ``+inf`` when infeasible.
    """
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, float))
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, float).ravel()
    A_eq = np.zeros((0, n)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, float))
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, float).ravel()
    if A_ub.shape[1] != n or A_eq.shape[1] != n:
        raise ValueError("constraint matrix width does not match objective")
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq

    if m == 0:
        if np.any(np.abs(c) > tol):
            return LPResult(UNBOUNDED, None, -np.inf)
        return LPResult(OPTIMAL, np.zeros(n), 0.0)

    # standard form: x = p - q, slacks for inequality rows, then artificials
    n_std = 2 * n + m_ub
    A = np.zeros((m, n_std))
    A[:m_ub, :n] = A_ub
    A[:m_ub, n:2 * n] = -A_ub
    A[:m_ub, 2 * n:] = np.eye(m_ub)
    A[m_ub:, :n] = A_eq
    A[m_ub:, n:2 * n] = -A_eq
    b = np.concatenate([b_ub, b_eq])
    neg = b < 0
    A[neg] *= -1.0
    b = np.where(neg, -b, b)

    T = np.zeros((m + 1, n_std + m + 1))
    T[:m, :n_std] = A
    T[:m, n_std:n_std + m] = np.eye(m)
    T[:m, -1] = b
    # phase-one objective: sum of artificials, expressed in nonbasic terms
    T[-1, :n_std] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(n_std, n_std + m))

    _, it1 = _simplex(T, basis, n_std, tol, max_iter)
    scale = max(1.0, float(np.abs(b).max()))
    if -T[-1, -1] > 1e-7 * scale:
        return LPResult(INFEASIBLE, None, np.inf, it1)

    # drive artificials out of the basis; drop redundant rows
    keep = np.ones(m, dtype=bool)
    for row in range(m):
        if basis[row] >= n_std:
            cols = np.flatnonzero(np.abs(T[row, :n_std]) > tol)
            if cols.size:
                _pivot(T, basis, row, cols[0])
            else:
                keep[row] = False
    rows = np.flatnonzero(keep)
    T = np.vstack([T[rows][:, list(range(n_std)) + [T.shape[1] - 1]],
                   np.zeros((1, n_std + 1))])
    basis = [basis[r] for r in rows]

    cost = np.concatenate([c, -c, np.zeros(m_ub)])
    T[-1, :n_std] = cost
    T[-1, -1] = 0.0
    for row, var in enumerate(basis):
        if cost[var] != 0.0:
            T[-1] -= cost[var] * T[row]

    status, it2 = _simplex(T, basis, n_std, tol, max_iter)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, -np.inf, it1 + it2)
    z = np.zeros(n_std)
    for row, var in enumerate(basis):
        z[var] = T[row, -1]
    x = z[:n] - z[n:2 * n]
    return LPResult(OPTIMAL, x, float(c @ x), it1 + it2)
