"""Sampled property checks for order transforms.

Every check takes an explicit seed and returns a :class:`Report`.  Checks
can refute a property on the sampled inputs; they never prove it.
"""

from dataclasses import dataclass, field

import numpy as np

from .cones import MinkowskiGauge, Seminorm, SublinearFunction, body_of
from .core import AffineFunctional, PLConvexFunction, is_leq, max2, minorants, sup_family
from .sampling import domain_points, rng_from

MAX_WITNESSES = 10


@dataclass
class Report:
    check: str
    seed: object
    samples: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)
    max_error: float = 0.0

    def witness(self, **info):
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append({k: _plain(v) for k, v in info.items()})

    def to_dict(self):
        return {"check": self.check, "seed": _plain(self.seed), "samples": self.samples,
                "violations": self.violations, "witnesses": self.witnesses,
                "max_error": _plain(self.max_error)}


def _plain(v):
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if np.isfinite(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.random.Generator):
        return None
    return v


def _first_gap(lo, hi, X, tol=1e-9):
    """First sampled x with lo(x) > hi(x), or None."""
    a, b = np.asarray(lo(X), float), np.asarray(hi(X), float)
    bad = np.flatnonzero(a > b + tol * (1.0 + np.abs(np.where(np.isfinite(b), b, 0.0))))
    return (X[bad[0]], a[bad[0]], b[bad[0]]) if bad.size else None


def _leq(f, g, X):
    """Decide f <= g: exactly for PL functions, by sampling otherwise."""
    if isinstance(f, PLConvexFunction) and isinstance(g, PLConvexFunction):
        if is_leq(f, g):
            return True, None
        gap = _first_gap(f, g, X)
        return False, gap
    gap = _first_gap(f, g, X)
    return gap is None, gap


def check_order_relation(oracle, mode, pairs, seed=0, points=200, inverse=None):
    """Count pairs f <= g whose images violate the order law of ``mode``.

    With ``inverse`` supplied, the converse direction is checked as well:
    pulling the image pair back must restore the original order.
    """
    rng = rng_from(seed)
    rep = Report("order_relation", seed)
    for i, (f, g) in enumerate(pairs):
        rep.samples += 1
        X = rng.normal(size=(points, f.n)) * 3.0
        Tf, Tg = oracle(f), oracle(g)
        lo, hi = (Tf, Tg) if mode == "preserving" else (Tg, Tf)
        ok, gap = _leq(lo, hi, X)
        if not ok:
            rep.violations += 1
            convex = isinstance(Tf, PLConvexFunction) and isinstance(Tg, PLConvexFunction)
            rep.witness(pair=i, point=None if gap is None else gap[0],
                        values=None if gap is None else [gap[1], gap[2]],
                        convex_images=convex)
        if inverse is not None:
            ok, gap = _leq(inverse(lo if mode == "preserving" else hi),
                           inverse(hi if mode == "preserving" else lo), X)
            if not ok:
                rep.violations += 1
                rep.witness(pair=i, direction="converse")
    return rep


def check_sup_commutation(oracle, family, seed=0, samples=1000, tol=1e-10):
    """Compare oracle(sup family) with the pointwise sup of the images."""
    rng = rng_from(seed)
    rep = Report("sup_commutation", seed, samples=samples)
    h = sup_family(family)
    lhs = oracle(h)
    X = domain_points(rng, lhs, samples) if isinstance(lhs, PLConvexFunction) \
        else rng.normal(size=(samples, h.n)) * 3.0
    a = np.asarray(lhs(X), float)
    b = np.max([np.asarray(oracle(f)(X), float) for f in family], axis=0)
    fin = np.isfinite(a) & np.isfinite(b)
    mismatch = np.isfinite(a) != np.isfinite(b)
    err = np.zeros(samples)
    err[fin] = np.abs(a[fin] - b[fin]) / (1.0 + np.abs(b[fin]))
    err[mismatch] = np.inf
    rep.max_error = float(err.max())
    bad = np.flatnonzero(err > tol)
    rep.violations = int(bad.size)
    for k in bad[:MAX_WITNESSES]:
        rep.witness(point=X[k], values=[a[k], b[k]])
    return rep


def check_limsup_commutation(oracle, sequence, limit, seed=0, samples=500, tol=1e-8):
    """Tail errors of the upper envelopes of oracle images against oracle(limit).

    e_k = max over samples of |sup_{j >= k} T f_j - T f|.  The input sequence
    must itself have nonincreasing tail errors against ``limit``.
    """
    rng = rng_from(seed)
    rep = Report("limsup_commutation", seed, samples=samples)
    X = domain_points(rng, limit, samples)

    def tails(values, ref):
        env = np.maximum.accumulate(np.asarray(values)[::-1], axis=0)[::-1]
        fin = np.isfinite(ref)
        return np.abs(env[:, fin] - ref[fin]).max(axis=1)

    lim = np.asarray(limit(X), float)
    d = tails([f(X) for f in sequence], lim)
    if np.any(np.diff(d) > tol) or (d[0] > tol and d[-1] >= d[0] - tol):
        raise ValueError("input sequence does not converge monotonically to the limit")
    e = tails([oracle(f)(X) for f in sequence], np.asarray(oracle(limit)(X), float))
    rep.max_error = float(e[-1])
    monotone = bool(np.all(np.diff(e) <= tol * (1.0 + e[:-1])))
    shrinking = e[-1] <= tol + d[-1] * (e[0] / d[0] if d[0] > 0 else 1.0)
    if not (monotone and shrinking):
        rep.violations = 1
    rep.witness(tail_errors=e, input_tail_errors=d, monotone=monotone)
    return rep


def segment_mub_lambda(u, v, w, tol=1e-9):
    """lambda in [0, 1] with w <= lam u + (1 - lam) v and matching gradient, else None."""
    d = u.phi - v.phi
    lam = float(d @ (w.phi - v.phi) / (d @ d))
    if np.linalg.norm(w.phi - (lam * u.phi + (1 - lam) * v.phi)) > tol * (1 + np.linalg.norm(w.phi)):
        return None
    if lam < -tol or lam > 1 + tol:
        return None
    lam = min(max(lam, 0.0), 1.0)
    if w.c > lam * u.c + (1 - lam) * v.c + tol * (1 + abs(w.c)):
        return None
    return lam


def check_segment_mub(u, v, seed=0, samples=200):
    """Affine w below u v v lie below some point of the segment [u, v]."""
    if u.n < 3:
        raise ValueError("the segment statement is checked only for n >= 3")
    if np.allclose(u.phi, v.phi):
        raise ValueError("gradients of u and v must differ")
    rng = rng_from(seed)
    rep = Report("segment_mub", seed)
    h = max2(u.as_function(), v.as_function())
    tries = 0
    while rep.samples < samples and tries < 20 * samples:
        tries += 1
        if rng.random() < 0.7:
            lam = rng.random()
            phi = lam * u.phi + (1 - lam) * v.phi
            c = lam * u.c + (1 - lam) * v.c - rng.exponential()
        else:
            phi = rng.normal(size=u.n)
            c = float(rng.normal()) - 5.0
        w = AffineFunctional(phi, c)
        if not is_leq(w.as_function(), h):
            continue
        rep.samples += 1
        if segment_mub_lambda(u, v, w) is None:
            rep.violations += 1
            rep.witness(phi=w.phi, c=w.c)
    return rep


def _sample_in(f, rng, count):
    if isinstance(f, PLConvexFunction):
        return domain_points(rng, f, count)
    return rng.normal(size=(count, f.n)) * 3.0


def check_generating_class(cone_tag, f, seed=0, samples=500, tol=1e-9):
    """Rebuild f as a sup over its tagged generating class and compare.

    conv: affine minorants; subl: linear functionals from the body; mink:
    positive parts max(<phi, .>, 0) over the polar's vertices; semn:
    absolute values |<phi, .>| over the dual body's vertices.
    """
    rng = rng_from(seed)
    rep = Report(f"generating_class[{cone_tag}]", seed, samples=samples)
    X = _sample_in(f, rng, samples)
    if cone_tag == "conv":
        P = np.array([[*p.phi, p.c] for p in minorants(f)])
        rebuilt = (X @ P[:, :-1].T + P[:, -1]).max(axis=1)
    elif cone_tag == "subl":
        C = body_of(f) if not isinstance(f, SublinearFunction) else f.body
        rebuilt = (X @ C.vertices.T).max(axis=1)
    elif cone_tag == "mink":
        if not isinstance(f, MinkowskiGauge):
            raise TypeError("mink tag needs a MinkowskiGauge")
        V = f.dual_body.vertices
        rebuilt = np.maximum(X @ V.T, 0.0).max(axis=1)
    elif cone_tag == "semn":
        if not isinstance(f, Seminorm):
            raise TypeError("semn tag needs a Seminorm")
        rebuilt = np.abs(X @ f.dual_body.vertices.T).max(axis=1)
    else:
        raise ValueError(f"unknown cone tag {cone_tag!r}")
    ref = np.asarray(f(X), float)
    fin = np.isfinite(ref)
    err = np.abs(rebuilt[fin] - ref[fin]) / (1.0 + np.abs(ref[fin]))
    rep.max_error = float(err.max()) if err.size else 0.0
    bad = np.flatnonzero(fin)[err > tol]
    rep.violations = int(bad.size)
    for k in bad[:MAX_WITNESSES]:
        rep.witness(point=X[k], values=[rebuilt[k], ref[k]])
    return rep
