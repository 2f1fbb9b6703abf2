"""Discrete Legendre-Fenchel transform of a sampled function.

Samples a nonconvex function on a grid, conjugates it with the fast
hull-based method and with the quadratic brute force, and shows that the
two agree bit for bit and that conjugating twice gives the convex hull.
"""

import time

import numpy as np

from convexorder import GridFunction1D, conjugate_grid, lsc_hull_grid


def main():
    x = np.linspace(-2.0, 2.0, 4001)
    values = x ** 4 - 2 * x ** 2 + 0.3 * x
    g = GridFunction1D(x[0], x[1] - x[0], values)

    t0 = time.perf_counter()
    fast = conjugate_grid(g)
    t_fast = time.perf_counter() - t0
    t0 = time.perf_counter()
    brute = conjugate_grid(g, method="bruteforce")
    t_brute = time.perf_counter() - t0
    print(f"grid of {g.count} nodes, dual range [{fast.x[0]:.2f}, {fast.x[-1]:.2f}]")
    print(f"fast {t_fast * 1e3:.1f} ms, brute force {t_brute * 1e3:.1f} ms, "
          f"identical: {np.array_equal(fast.values, brute.values)}")

    back = conjugate_grid(fast, y_min=g.x_min, y_step=g.step, count=g.count)
    hull = lsc_hull_grid(g)
    gap = np.max(np.abs(back.values - hull.values))
    # the gap is set by the spacing of the dual grid
    print(f"f** against the convex hull of the samples: max gap {gap:.2e}")
    print(f"double well flattened: f(0) = {values[2000]:.3f}, f**(0) = {back.values[2000]:.3f}")


if __name__ == "__main__":
    main()
