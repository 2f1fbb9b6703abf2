"""Recover the linear map behind lattice and cone oracles.

The same matrix A drives four oracles: on subspaces (recoverable up to a
scalar), on seminorms (up to sign), on Minkowski gauges (exactly, since an
anchored segment breaks the symmetry) and on squared gauges.  A translation
of convex sets is refuted as a lattice isomorphism with a concrete witness.
"""

import numpy as np

from convexorder import (TransformOracle, check_lattice_iso, recover_homogeneous_map,
                         recover_linear_subspaces, recover_mink_map, recover_seminorm_map)
from convexorder.reconstruct import normalize_scalar
from convexorder.sampling import random_gl, random_polytope


def main():
    rng = np.random.default_rng(7)
    A = random_gl(rng, 3)
    print("A =\n", np.round(A, 4))

    sub = recover_linear_subspaces(TransformOracle("subspace-lattice", lambda M: M.image(A), 3))
    print("subspaces:", sub.scalar_class, "error",
          f"{np.linalg.norm(sub.matrix - normalize_scalar(A)):.1e}")

    for sign in (1, -1):
        sem = recover_seminorm_map(TransformOracle("semn", lambda f: f.precompose(sign * A), 3))
        mk = recover_mink_map(TransformOracle("mink", lambda f: f.precompose(sign * A), 3))
        gap = min(np.linalg.norm(sem.matrix - A), np.linalg.norm(sem.matrix + A))
        label = "+A" if np.allclose(mk.matrix, A) else "-A"
        print(f"f({'+' if sign > 0 else '-'}A x): seminorms give the class +-A (error {gap:.1e}), "
              f"gauges give exactly {label}")

    sq = recover_homogeneous_map(TransformOracle("mink", lambda f: f.precompose(A), 3), 2)
    print(f"squared gauges: |U - A| = {np.linalg.norm(sq.matrix - A):.1e}")

    pairs = [(random_polytope(rng, 2, solid=True), random_polytope(rng, 2, solid=True))
             for _ in range(10)]
    rep = check_lattice_iso(lambda C: C.translate(np.array([2.0, -1.0])), pairs, "convex0")
    w = next(w for w in rep.witnesses if w["kind"] == "join")
    zero = np.zeros(2)
    print(f"translation: {rep.violations} violations; on pair {w['pair']} the origin lies in the "
          f"join of the images ({w['expected'].contains(zero)}) but not in the image of the "
          f"join ({w['image'].contains(zero)})")


if __name__ == "__main__":
    main()
