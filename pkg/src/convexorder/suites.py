"""Named, seeded verification suites (used by ``convexorder verify``)."""

import numpy as np

from .cones import MinkowskiGauge, Seminorm, SublinearFunction
from .core import AffineFunctional, PLConvexFunction
from .fenchel import biconjugate, conjugate_pl
from .lattice import check_lattice_iso
from .reconstruct import (TransformOracle, action_residual, identify_preserving,
                          identify_reversing)
from .sampling import (domain_points, ordered_pair, random_gl, random_pl, random_polytope,
                       random_subspace, random_transform, rng_from)
from .verifier import (Report, check_generating_class, check_limsup_commutation,
                       check_order_relation, check_segment_mub, check_sup_commutation)


def _fenchel(seed):
    rng = rng_from(seed)
    pairs = [ordered_pair(rng, int(rng.integers(1, 4))) for _ in range(60)]
    out = [check_order_relation(conjugate_pl, "reversing", pairs, seed=seed)]
    rep = Report("biconjugation", seed)
    for _ in range(40):
        f = random_pl(rng, int(rng.integers(1, 4)), domain="box" if rng.random() < 0.5 else None)
        X = np.vstack([domain_points(rng, f, 100), f.vertices()])
        err = float(np.max(np.abs(biconjugate(f)(X) - f(X))))
        rep.samples += 1
        rep.max_error = max(rep.max_error, err)
        if not err <= 1e-8:
            rep.violations += 1
            rep.witness(max_error=err)
    out.append(rep)
    rep = Report("fenchel_young", seed)
    for _ in range(40):
        f = random_pl(rng, 2)
        fs = conjugate_pl(f)
        X = rng.normal(size=(250, 2)) * 3
        Y = domain_points(rng, fs, 250)
        gap = f(X) + fs(Y) - np.sum(X * Y, axis=1)
        rep.samples += len(X)
        bad = int(np.sum(gap < -1e-9))
        rep.violations += bad
        rep.max_error = max(rep.max_error, float(max(0.0, -gap.min())))
    out.append(rep)
    return out


def _transforms(seed):
    rng = rng_from(seed)
    out = []
    for mode in ("preserving", "reversing"):
        t = random_transform(rng, 2, mode)
        pairs = [ordered_pair(rng, 2) for _ in range(30)]
        rep = check_order_relation(t, mode, pairs, seed=seed)
        rep.check = f"order_relation[{mode}]"
        out.append(rep)
    t = random_transform(rng, 2)
    out.append(check_sup_commutation(t, [random_pl(rng, 2) for _ in range(4)], seed=seed))
    f = random_pl(rng, 2)
    seq = [PLConvexFunction(f.slopes, f.offsets + 1.0 / k) for k in range(1, 21)]
    out.append(check_limsup_commutation(t, seq, f, seed=seed))
    return out


def _cones(seed):
    rng = rng_from(seed)
    out = [check_generating_class("conv", random_pl(rng, 3, domain="box"), seed=seed)]
    out.append(check_generating_class("subl", SublinearFunction(random_polytope(rng, 3)), seed=seed))
    out.append(check_generating_class("mink", MinkowskiGauge(random_polytope(rng, 3, solid=True)),
                                      seed=seed))
    out.append(check_generating_class("semn", Seminorm(random_polytope(rng, 3, symmetric=True)),
                                      seed=seed))
    return out


def _lattice(seed):
    rng = rng_from(seed)
    A = random_gl(rng, 3)
    pairs = [(random_subspace(rng, 3), random_subspace(rng, 3)) for _ in range(50)]
    lat = check_lattice_iso(lambda M: M.image(A), pairs, "subspace")
    rep = Report("lattice_iso[subspace]", seed, samples=lat.samples,
                 violations=lat.violations, witnesses=lat.witnesses)
    B = random_gl(rng, 2)
    pairs = [(random_polytope(rng, 2), random_polytope(rng, 2)) for _ in range(30)]
    lat = check_lattice_iso(lambda C: C.linear_image(B), pairs, "convex")
    rep2 = Report("lattice_iso[convex]", seed, samples=lat.samples,
                  violations=lat.violations, witnesses=lat.witnesses)
    return [rep, rep2]


def _segments(seed):
    rng = rng_from(seed)
    phi = rng.normal(size=3)
    u = AffineFunctional(phi, float(rng.normal()))
    v = AffineFunctional(rng.normal(size=3), float(rng.normal()))
    return [check_segment_mub(u, v, seed=seed)]


def _reconstruct(seed):
    rng = rng_from(seed)
    out = []
    for mode, ident, n in (("preserving", identify_preserving, 4),
                           ("reversing", identify_reversing, 2)):
        t = random_transform(rng, n, mode)
        oracle = TransformOracle("conv", t, n)
        r = ident(oracle, seed=seed)
        res = action_residual(r, oracle, seed=seed + 1)
        tol = 1e-8 if mode == "preserving" else 1e-6
        out.append(Report(f"identify[{mode}]", seed, samples=1,
                          violations=int(res > tol), max_error=res))
    return out


SUITES = {"fenchel": _fenchel, "transforms": _transforms, "cones": _cones,
          "lattice": _lattice, "segments": _segments, "reconstruct": _reconstruct}


def run_suite(name, seed=0):
    if name == "all":
        return [r for key in sorted(SUITES) for r in SUITES[key](seed)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](seed)


SUITES_AND_ALL = sorted(SUITES) + ["all"]
