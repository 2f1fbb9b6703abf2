import numpy as np
import pytest

from convexorder.core import AffineFunctional, PLConvexFunction, is_leq, sup_family
from convexorder.fenchel import conjugate_pl
from convexorder.sampling import (domain_points, ordered_pair, random_pl, random_transform)
from convexorder.transforms import (CanonicalTransform, apply, compose, conjugate_side,
                                    fenchel_transform, invert, param_errors)

L1 = PLConvexFunction([[s1, s2] for s1 in (1.0, -1.0) for s2 in (1.0, -1.0)], np.zeros(4))


def close_on(f, g, X, tol):
    a, b = f(X), g(X)
    assert np.array_equal(np.isinf(a), np.isinf(b))
    fin = np.isfinite(a)
    assert np.max(np.abs(a[fin] - b[fin]), initial=0.0) <= tol


def test_validation():
    with pytest.raises(ValueError):
        CanonicalTransform(0.0, np.eye(2), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        CanonicalTransform(1.0, np.zeros((2, 2)), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        CanonicalTransform(1.0, np.eye(2), np.zeros(2), np.zeros(2), mode="sideways")
    with pytest.raises(ValueError):
        apply(CanonicalTransform.identity(3), L1)


def test_identity_preserving(rng):
    f = random_pl(rng, 2)
    g = apply(CanonicalTransform.identity(2), f)
    assert np.array_equal(g.slopes, f.slopes) and np.array_equal(g.offsets, f.offsets)


@pytest.mark.parametrize("seed", range(10))
def test_fenchel_involution(seed):
    rng = np.random.default_rng(seed)
    F = fenchel_transform(2)
    f = random_pl(rng, 2, domain="box" if seed % 2 else None)
    X = np.vstack([f.vertices(), domain_points(rng, f, 300)])
    close_on(F(F(f)), f, X, 1e-8)


def test_diag_example(rng):
    U = np.diag([1.0, 2.0])
    t = CanonicalTransform(2.0, U, np.zeros(2), np.zeros(2))
    X = rng.normal(size=(500, 2)) * 3
    expected = 2.0 * (np.abs(X[:, 0]) + np.abs(2 * X[:, 1]))
    assert np.max(np.abs(t(L1)(X) - expected)) <= 1e-10


def test_pointwise_formula(rng):
    for _ in range(20):
        t = random_transform(rng, 3)
        f = random_pl(rng, 3)
        X = rng.normal(size=(200, 3))
        ref = t.alpha * f(X @ t.U.T + t.shift) + X @ t.phi0 + t.r0
        assert np.allclose(t(f)(X), ref, rtol=1e-12, atol=1e-12)


def test_reversing_pointwise_formula(rng):
    for _ in range(10):
        t = random_transform(rng, 2, "reversing")
        f = random_pl(rng, 2, domain="box")
        fs = conjugate_pl(f)
        X = rng.normal(size=(200, 2))
        ref = t.alpha * fs(X @ t.U.T + t.shift) + X @ t.phi0 + t.r0
        close_on(t(f), lambda Z: ref, X, 1e-10)


def test_invert_identity():
    I = CanonicalTransform.identity(3)
    assert max(param_errors(invert(I), I).values()) == 0.0


def test_invert_roundtrip_200():
    rng = np.random.default_rng(200)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 5))
        t = random_transform(rng, n)
        f = random_pl(rng, n)
        X = rng.normal(size=(50, n)) * 2
        worst = max(worst, float(np.max(np.abs(invert(t)(t(f))(X) - f(X)))))
    assert worst <= 1e-9


def test_invert_involution(rng):
    for _ in range(50):
        t = random_transform(rng, int(rng.integers(1, 6)))
        assert max(param_errors(invert(invert(t)), t).values()) <= 1e-12


def test_invert_rejects_reversing(rng):
    with pytest.raises(ValueError):
        invert(random_transform(rng, 2, "reversing"))


def test_compose_with_inverse(rng):
    for _ in range(20):
        t = random_transform(rng, 3)
        c = compose(t, invert(t))
        assert c.mode == "preserving"
        assert max(param_errors(c, CanonicalTransform.identity(3)).values()) <= 1e-12


def test_compose_two_fenchel():
    F = fenchel_transform(3)
    c = compose(F, F)
    assert c.mode == "preserving"
    assert max(param_errors(c, CanonicalTransform.identity(3)).values()) == 0.0


@pytest.mark.parametrize("ms,mt", [("preserving", "preserving"), ("preserving", "reversing"),
                                   ("reversing", "preserving"), ("reversing", "reversing")])
def test_compose_matches_sequential(ms, mt):
    rng = np.random.default_rng([ms == "reversing", mt == "reversing"])
    count = 100 if ms == mt == "preserving" else 25
    expected_mode = "preserving" if ms == mt else "reversing"
    for _ in range(count):
        s, t = random_transform(rng, 2, ms), random_transform(rng, 2, mt)
        c = compose(s, t)
        assert c.mode == expected_mode
        f = random_pl(rng, 2, domain="box")
        seq = s(t(f))
        X = np.vstack([seq.vertices(), domain_points(rng, seq, 100)])
        close_on(c(f), seq, X, 1e-9)


def test_conjugate_side_law(rng):
    for _ in range(20):
        t = random_transform(rng, 2)
        f = random_pl(rng, 2, domain="box")
        lhs = conjugate_pl(t(f))
        rhs = conjugate_side(t)(conjugate_pl(f))
        X = np.vstack([lhs.vertices(), domain_points(rng, lhs, 200)])
        close_on(lhs, rhs, X, 1e-9)


@pytest.mark.parametrize("mode", ["preserving", "reversing"])
def test_order_law(mode):
    rng = np.random.default_rng(11)
    count = 1000 if mode == "preserving" else 300
    bad = 0
    for _ in range(count):
        n = int(rng.integers(1, 4))
        t = random_transform(rng, n, mode)
        f, g = ordered_pair(rng, n)
        if mode == "preserving":
            bad += not is_leq(t(f), t(g))
        else:
            bad += not is_leq(t(g), t(f))
    assert bad == 0


def test_sup_commutation(rng):
    for _ in range(50):
        t = random_transform(rng, 2)
        fs = [random_pl(rng, 2) for _ in range(int(rng.integers(2, 6)))]
        lhs = t(sup_family(fs))
        rhs = sup_family([t(f) for f in fs])
        X = rng.normal(size=(300, 2)) * 3
        assert np.max(np.abs(lhs(X) - rhs(X))) <= 1e-10


def test_affinity_on_affine_functions(rng):
    for _ in range(50):
        t = random_transform(rng, 3)
        u = AffineFunctional(rng.normal(size=3), float(rng.normal())).as_function()
        v = AffineFunctional(rng.normal(size=3), float(rng.normal())).as_function()
        lam = float(rng.uniform())
        w = PLConvexFunction(lam * u.slopes + (1 - lam) * v.slopes,
                             lam * u.offsets + (1 - lam) * v.offsets)
        X = rng.normal(size=(100, 3))
        assert np.allclose(t(w)(X), lam * t(u)(X) + (1 - lam) * t(v)(X), atol=1e-10)


def test_bounded_continuity(rng):
    t = random_transform(rng, 2)
    f = random_pl(rng, 2)
    X = rng.normal(size=(400, 2)) * 2
    errs = []
    for k in (1, 10, 100, 1000):
        fk = PLConvexFunction(f.slopes * (1 + 1.0 / k), f.offsets + 1.0 / k)
        errs.append(np.max(np.abs(t(fk)(X) - t(f)(X))))
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-1 * errs[0]


def test_json_roundtrip(rng):
    t = random_transform(rng, 3, "reversing")
    back = CanonicalTransform.from_dict(t.to_dict())
    assert back.mode == t.mode and max(param_errors(back, t).values()) == 0.0
