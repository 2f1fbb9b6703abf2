import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from convexorder.core import GridFunction1D, PLConvexFunction, is_leq
from convexorder.exceptions import DimensionError, ImproperFunctionError
from convexorder.fenchel import (biconjugate, conjugate_grid, conjugate_pl,
                                 legendre_bruteforce, legendre_fast)
from convexorder.polyhedron import Polyhedron
from convexorder.sampling import domain_points, ordered_pair, random_pl

ABS = PLConvexFunction([[1.0], [-1.0]], [0.0, 0.0])
DELTA0 = PLConvexFunction.indicator(Polyhedron.point([0.0]))


def sup_oracle(f, Y, X):
    """sup over the sample set X of <y, x> - f(x)."""
    vals = f(X)
    fin = np.isfinite(vals)
    return np.max(Y @ X[fin].T - vals[fin], axis=1)


def test_conjugate_affine():
    a, c = np.array([1.5, -2.0]), 0.7
    fs = conjugate_pl(PLConvexFunction.affine(a, c))
    assert fs(a) == pytest.approx(-c)
    assert fs(a + 1e-3) == np.inf


def test_conjugate_delta0():
    fs = conjugate_pl(DELTA0)
    Y = np.linspace(-5, 5, 11)[:, None]
    assert np.all(fs(Y) == 0.0)


def test_conjugate_abs_against_grid():
    fs = conjugate_pl(ABS)
    X = np.linspace(-10, 10, 20001)[:, None]
    Y = np.linspace(-1, 1, 41)[:, None]
    assert np.allclose(fs(Y), sup_oracle(ABS, Y, X), atol=1e-12)
    assert fs(np.array([1.01])) == np.inf and fs(np.array([-1.01])) == np.inf


@pytest.mark.parametrize("seed", range(10))
def test_conjugate_matches_sup_at_vertices_and_samples(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    f = random_pl(rng, n, domain="box")
    fs = conjugate_pl(f)
    # the sup of an affine function over the bounded domain sits at a domain vertex
    X = f.domain.vertices
    Y = np.vstack([fs.vertices(), domain_points(rng, fs, 1000)])
    ref = np.max(Y @ X.T - f(X), axis=1)
    # f is PL on the box, so the sup is over epigraph vertices
    ref = np.maximum(ref, sup_oracle(f, Y, f.vertices()))
    assert np.allclose(fs(Y), ref, atol=1e-9)


def test_dimension_cap_and_improper():
    with pytest.raises(DimensionError):
        conjugate_pl(PLConvexFunction.constant(4))
    with pytest.raises(ImproperFunctionError):
        conjugate_pl(PLConvexFunction.indicator(Polyhedron.empty(2)))


def test_biconjugate_examples():
    X = np.linspace(-3, 3, 61)[:, None]
    assert np.allclose(biconjugate(ABS)(X), np.abs(X[:, 0]), atol=1e-12)
    b = biconjugate(DELTA0)
    assert b(np.array([0.0])) == 0.0 and b(np.array([0.5])) == np.inf


@pytest.mark.parametrize("seed", range(50))
def test_biconjugate_random_2d(seed):
    rng = np.random.default_rng(seed)
    f = random_pl(rng, 2, domain="box" if seed % 2 else None)
    X = np.vstack([f.vertices(), domain_points(rng, f, 500)])
    assert np.allclose(biconjugate(f)(X), f(X), atol=1e-8, rtol=0)


@pytest.mark.parametrize("seed", range(20))
def test_order_reversal(seed):
    rng = np.random.default_rng(seed)
    f, g = ordered_pair(rng, int(rng.integers(1, 4)))
    assert is_leq(conjugate_pl(g), conjugate_pl(f))


@pytest.mark.parametrize("seed", range(10))
def test_fenchel_young(seed):
    rng = np.random.default_rng(seed)
    f = random_pl(rng, 2)
    fs = conjugate_pl(f)
    X = rng.normal(size=(10000, 2)) * 3
    Y = domain_points(rng, fs, 10000)
    assert np.all(f(X) + fs(Y) >= np.sum(X * Y, axis=1) - 1e-9)
    # equality for y a gradient of an active piece at x
    active = np.argmax(X @ f.slopes.T + f.offsets, axis=1)
    G = f.slopes[active]
    assert np.allclose(f(X) + fs(G), np.sum(X * G, axis=1), atol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_shift_calculus(seed):
    rng = np.random.default_rng(seed)
    f = random_pl(rng, 2)
    a, b = rng.normal(size=2), rng.normal(size=2)
    fs = conjugate_pl(f)
    shifted = conjugate_pl(f.precompose(np.eye(2), -a))
    tilted = conjugate_pl(f.add_affine(b))
    Y = domain_points(rng, fs, 500)
    assert np.allclose(shifted(Y), fs(Y) + Y @ a, atol=1e-10)
    assert np.allclose(tilted(Y + b), fs(Y), atol=1e-10)


# grid transform
def test_grid_quadratic_error_bound():
    N = 1001
    x = np.linspace(-5, 5, N)
    h = x[1] - x[0]
    g = GridFunction1D(-5.0, h, 0.5 * x ** 2)
    out = conjugate_grid(g, y_min=-4.0, y_step=0.01, count=801)
    assert np.max(np.abs(out.values - 0.5 * out.x ** 2)) <= h ** 2 / 2


def test_grid_single_finite_node():
    v = np.full(5, np.inf)
    v[2] = 0.0
    g = GridFunction1D(0.0, 0.5, v)
    out = conjugate_grid(g, y_min=-2.0, y_step=0.5, count=9)
    assert np.array_equal(out.values, out.x * 1.0)


def test_grid_all_infinite():
    with pytest.raises(ValueError):
        conjugate_grid(GridFunction1D(0.0, 1.0, [np.inf, np.inf]))


@pytest.mark.parametrize("seed", range(10))
def test_grid_fast_equals_bruteforce_random_convex(seed):
    rng = np.random.default_rng(seed)
    slopes = np.sort(rng.normal(size=255))
    v = np.concatenate([[0.0], np.cumsum(slopes * 0.01)])
    g = GridFunction1D(-1.0, 0.01, v)
    fast = conjugate_grid(g, y_min=-3.0, y_step=6 / 255, count=256)
    brute = conjugate_grid(g, y_min=-3.0, y_step=6 / 255, count=256, method="bruteforce")
    assert np.array_equal(fast.values, brute.values)


@pytest.mark.parametrize("kind", ["noise", "collinear", "rounded", "kinked"])
def test_fast_equals_bruteforce_degenerate(kind):
    rng = np.random.default_rng(1)
    x = np.linspace(-1, 1, 301)
    v = {"noise": rng.normal(size=301), "collinear": 0.3 * x + 1.0,
         "rounded": np.round(rng.normal(size=301), 1), "kinked": 3 * np.abs(x)}[kind]
    y = np.linspace(-5, 5, 1001)
    assert np.array_equal(legendre_fast(x, v, y), legendre_bruteforce(x, v, y))


def test_default_output_range():
    x = np.linspace(-1, 1, 11)
    g = GridFunction1D(-1.0, 0.2, np.abs(x))
    out = conjugate_grid(g)
    assert out.x[0] == -1.0 and out.x[-1] == pytest.approx(1.0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=80),
       st.floats(-50, 50), st.floats(1e-3, 1.0))
def test_fast_equals_bruteforce_property(values, y0, dy):
    x = -1.0 + 0.05 * np.arange(len(values))
    y = y0 + dy * np.arange(64)
    v = np.array(values)
    assert np.array_equal(legendre_fast(x, v, y), legendre_bruteforce(x, v, y))
