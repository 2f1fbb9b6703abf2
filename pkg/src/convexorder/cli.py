"""Command-line frontend.

Exit status: 0 on success, 1 when a check finds violations (or an oracle is
refuted), 2 on bad input or a broken oracle protocol.
"""

import argparse
import sys
import time

import numpy as np

from . import io
from .core import GridFunction1D
from .exceptions import NonRepresentableError
from .fenchel import conjugate_grid, conjugate_pl, legendre_bruteforce
from .reconstruct import (TransformOracle, action_residual, identify_preserving,
                          identify_reversing, normalize_scalar, normalize_sign,
                          recover_from_segments, recover_linear_subspaces,
                          recover_mink_map, recover_seminorm_map)
from .sampling import random_gl, random_transform, rng_from
from .transforms import CanonicalTransform, apply, param_errors
from . import suites


class CheckFailed(Exception):
    pass


def _parse_grid(spec):
    try:
        a, b, N = spec.split(":")
        a, b, N = float(a), float(b), int(N)
    except ValueError:
        raise ValueError(f"grid must look like a:b:N, got {spec!r}") from None
    if N < 2 or not b > a:
        raise ValueError("grid needs a < b and N >= 2")
    return a, b, N


def cmd_conjugate(args):
    if args.input.endswith(".csv"):
        g = io.read_grid_csv(args.input)
        out = conjugate_grid(g)
        if args.output in (None, "-"):
            print("x,value")
            for x, v in zip(out.x, out.values):
                print(f"{float(x)!r},{'inf' if np.isinf(v) else repr(float(v))}")
        else:
            io.write_grid_csv(args.output, out)
        return 0
    f = io.function_from_dict(io.read_json(args.input))
    io.write_text(args.output, io.dumps(io.function_to_dict(conjugate_pl(f))))
    return 0


def cmd_apply(args):
    t = io.transform_from_dict(io.read_json(args.transform))
    f = io.function_from_dict(io.read_json(args.function))
    io.write_text(args.output, io.dumps(io.function_to_dict(apply(t, f))))
    return 0


def _builtin_transform(name, n, mode, rng):
    if name == "random":
        return random_transform(rng, n, mode)
    if name == "identity":
        return CanonicalTransform.identity(n, mode)
    if name == "fenchel":
        return CanonicalTransform.identity(n, "reversing")
    raise ValueError(f"unknown builtin oracle {name!r}")


def cmd_identify(args):
    rng = rng_from(args.seed)
    generator = None
    kind, _, arg = args.oracle.partition(":")
    if kind == "batch":
        func = io.BatchOracle(arg, "conv")
    elif kind == "builtin":
        generator = _builtin_transform(arg, args.n, args.mode, rng)
        func = generator
    else:
        raise ValueError(f"oracle must be batch:<file> or builtin:<name>, got {args.oracle!r}")
    rec = io.Recorder(func, args.record) if args.record else None
    oracle = TransformOracle("conv", rec or func, args.n)
    ident = identify_preserving if args.mode == "preserving" else identify_reversing
    try:
        t = ident(oracle, audit=args.audit, seed=args.seed)
        residual = action_residual(t, oracle, seed=args.seed + 1)
    finally:
        if rec:
            rec.close()
    out = {"transform": t.to_dict(), "residual": residual, "oracle_calls": oracle.calls}
    if generator is not None:
        out["generator"] = generator.to_dict()
        out["parameter_errors"] = param_errors(t, generator)
    io.write_text(args.output, io.dumps(out))
    return 0


LATTICE_TAGS = {"subspace": "subspace-lattice", "segments": "symm-set-lattice",
                "semn": "semn", "mink": "mink"}


def _builtin_map(lattice, A):
    if lattice == "subspace":
        return lambda M: M.image(A)
    if lattice == "segments":
        return lambda C: C.linear_image(A)
    return lambda f: f.precompose(A)


def _expected(lattice, A):
    if lattice == "subspace":
        return normalize_scalar(A)
    if lattice in ("segments", "semn"):
        return normalize_sign(A)
    return A


def cmd_reconstruct(args):
    rng = rng_from(args.seed)
    tag = LATTICE_TAGS[args.lattice]
    A = None
    kind, _, arg = args.oracle.partition(":")
    if kind == "batch":
        func = io.BatchOracle(arg, tag)
    elif kind == "builtin":
        if arg == "random":
            A = random_gl(rng, args.n)
        elif arg == "identity":
            A = np.eye(args.n)
        else:
            raise ValueError(f"unknown builtin oracle {arg!r}")
        func = _builtin_map(args.lattice, A)
    else:
        raise ValueError(f"oracle must be batch:<file> or builtin:<name>, got {args.oracle!r}")
    rec = io.Recorder(func, args.record) if args.record else None
    oracle = TransformOracle(tag, rec or func, args.n)
    recover = {"subspace": recover_linear_subspaces, "segments": recover_from_segments,
               "semn": recover_seminorm_map, "mink": recover_mink_map}[args.lattice]
    try:
        res = recover(oracle, seed=args.seed)
    finally:
        if rec:
            rec.close()
    out = res.to_dict()
    out["oracle_calls"] = oracle.calls
    if A is not None:
        out["generator"] = A.tolist()
        out["generator_error"] = float(np.linalg.norm(res.matrix - _expected(args.lattice, A)))
    io.write_text(args.output, io.dumps(out))
    return 0


def cmd_verify(args):
    reports = suites.run_suite(args.suite, args.seed)
    out = [r.to_dict() for r in reports]
    io.write_text(args.output, io.dumps(out))
    if any(r.violations for r in reports):
        raise CheckFailed(f"{sum(r.violations for r in reports)} violations")
    return 0


def cmd_plot(args):
    f = io.function_from_dict(io.read_json(args.function))
    a, b, N = _parse_grid(args.grid)
    axis = np.linspace(a, b, N)
    mesh = np.meshgrid(*([axis] * f.n), indexing="ij")
    X = np.column_stack([m.ravel() for m in mesh])
    vals = f(X)
    names = ["x"] if f.n == 1 else [f"x{i + 1}" for i in range(f.n)]
    lines = [",".join(names + ["value"])]
    for x, v in zip(X, vals):
        cells = [repr(float(c)) for c in x] + ["inf" if np.isinf(v) else repr(float(v))]
        lines.append(",".join(cells))
    io.write_text(args.output, "\n".join(lines))
    return 0


def bench_legendre(N, M=None, subset=2000, seed=0):
    """Timings of the fast and brute-force discrete transforms.

    The brute force is timed on ``subset`` output nodes and scaled linearly
    to all M nodes (its cost is exactly proportional to M).
    """
    M = N if M is None else M
    rng = rng_from(seed)
    x = np.linspace(-5.0, 5.0, N)
    g = GridFunction1D(-5.0, x[1] - x[0], 0.5 * x ** 2 + 0.01 * rng.random(N))
    t0 = time.perf_counter()
    out = conjugate_grid(g, count=M)
    fast = time.perf_counter() - t0
    k = min(subset, M)
    idx = np.linspace(0, M - 1, k).astype(int)
    t0 = time.perf_counter()
    brute = legendre_bruteforce(g.x, g.values, out.x[idx])
    brute_t = (time.perf_counter() - t0) * M / k
    return {"N": N, "M": M, "fast_seconds": fast, "brute_seconds": brute_t,
            "brute_extrapolated": k < M, "speedup": brute_t / fast,
            "identical": bool(np.array_equal(brute, out.values[idx]))}


def cmd_bench(args):
    if args.what != "legendre":
        raise ValueError("only 'legendre' is benchmarked")
    io.write_text(args.output, io.dumps(bench_legendre(args.n, args.m, args.subset, args.seed)))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="convexorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("conjugate", help="Fenchel conjugate of a function JSON or grid CSV")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_conjugate)

    s = sub.add_parser("apply", help="apply a canonical transform to a function")
    s.add_argument("transform")
    s.add_argument("function")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("identify", help="identify a canonical transform from an oracle")
    s.add_argument("--mode", choices=["preserving", "reversing"], default="preserving")
    s.add_argument("--oracle", required=True, help="batch:<file> or builtin:random|identity|fenchel")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--audit", type=int, default=100)
    s.add_argument("--record", help="log oracle calls to a JSON-lines batch file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_identify)

    s = sub.add_parser("reconstruct", help="recover the linear map behind a lattice oracle")
    s.add_argument("--lattice", choices=sorted(LATTICE_TAGS), required=True)
    s.add_argument("--oracle", required=True, help="batch:<file> or builtin:random|identity")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--record")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("verify", help="run a seeded verification suite")
    s.add_argument("--suite", choices=suites.SUITES_AND_ALL, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plot", help="CSV samples of a function on a grid")
    s.add_argument("function")
    s.add_argument("--grid", required=True, help="a:b:N per axis")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("bench", help="timings")
    s.add_argument("what", choices=["legendre"])
    s.add_argument("--n", type=int, default=100000)
    s.add_argument("--m", type=int)
    s.add_argument("--subset", type=int, default=2000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"violations: {exc}", file=sys.stderr)
        return 1
    except io.ProtocolError as exc:
        print(f"oracle protocol error: {exc}", file=sys.stderr)
        return 2
    except NonRepresentableError as exc:
        print(f"oracle refuted: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
