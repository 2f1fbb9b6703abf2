"""JSON and CSV formats.

Function:   {"n", "pieces": [{"phi", "c"}], "domain": <polyhedron> | null}
Polyhedron: {"n", "vertices", "rays", "halfspaces": [{"normal", "offset"}], "flags"}
Transform:  {"alpha", "U", "shift", "phi0", "r0", "mode"}
Grid CSV:   two columns x,value with the literal "inf" for +inf.

Oracle batch files are JSON lines {"request": ..., "response": ...}; requests
are matched by their canonical (sorted-key) JSON text.
"""

import csv
import json

import numpy as np

from .cones import HomogeneousFunction, MinkowskiGauge, Seminorm, SublinearFunction
from .core import GridFunction1D, PLConvexFunction
from .lattice import Subspace
from .polyhedron import Polyhedron
from .transforms import CanonicalTransform


class ProtocolError(ValueError):
    """A batch oracle file cannot answer a request."""


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def polyhedron_to_dict(P):
    return {"n": P.n, "vertices": P.vertices.tolist(), "rays": P.rays.tolist(),
            "halfspaces": [{"normal": a.tolist(), "offset": float(b)} for a, b in P.halfspaces],
            "flags": {k: bool(v) for k, v in P.flags.items()}}


def polyhedron_from_dict(d, n=None):
    n = d.get("n", n)
    hs = d.get("halfspaces")
    V, R = d.get("vertices"), d.get("rays")
    if n is None:
        for rows in (V, R, [h["normal"] for h in hs or []]):
            if rows:
                n = len(rows[0])
                break
    if n is None:
        raise ValueError("cannot infer the dimension of a polyhedron")
    kw = {}
    if hs is not None:
        kw["A"] = np.array([h["normal"] for h in hs], float).reshape(-1, n)
        kw["b"] = np.array([h["offset"] for h in hs], float)
    if V is not None:
        kw["vertices"] = np.array(V, float).reshape(-1, n)
        kw["rays"] = np.array(R or [], float).reshape(-1, n)
    return Polyhedron(n, **kw)


def function_to_dict(f):
    return {"n": f.n,
            "pieces": [{"phi": p.tolist(), "c": float(c)} for p, c in zip(f.slopes, f.offsets)],
            "domain": None if f.domain is None else polyhedron_to_dict(f.domain)}


def function_from_dict(d):
    n = int(d["n"])
    pieces = d["pieces"]
    slopes = np.array([p["phi"] for p in pieces], float).reshape(-1, n)
    offsets = np.array([p["c"] for p in pieces], float)
    dom = d.get("domain")
    return PLConvexFunction(slopes, offsets, None if dom is None else polyhedron_from_dict(dom, n))


def transform_to_dict(t):
    return t.to_dict()


def transform_from_dict(d):
    return CanonicalTransform.from_dict(d)


def subspace_to_dict(M):
    return {"n": M.n, "basis": M.basis.T.tolist()}


def subspace_from_dict(d):
    n = int(d["n"])
    B = np.array(d["basis"], float).reshape(-1, n)
    return Subspace(n, B.T)


# objects exchanged with oracles, keyed by domain tag
def encode(obj):
    if isinstance(obj, PLConvexFunction):
        return function_to_dict(obj)
    if isinstance(obj, Polyhedron):
        return polyhedron_to_dict(obj)
    if isinstance(obj, Subspace):
        return subspace_to_dict(obj)
    if isinstance(obj, SublinearFunction):
        return {"body": polyhedron_to_dict(obj.body)}
    if isinstance(obj, MinkowskiGauge):
        return {"body": polyhedron_to_dict(obj.body)}
    if isinstance(obj, Seminorm):
        return {"dual_body": polyhedron_to_dict(obj.dual_body)}
    if isinstance(obj, HomogeneousFunction):
        return {"base": encode(obj.base), "degree": obj.degree, "mode": obj.mode}
    raise TypeError(f"cannot encode {type(obj).__name__}")


DECODERS = {
    "conv": function_from_dict,
    "subl": lambda d: SublinearFunction(polyhedron_from_dict(d["body"])),
    "mink": lambda d: MinkowskiGauge(polyhedron_from_dict(d["body"])),
    "semn": lambda d: Seminorm(polyhedron_from_dict(d["dual_body"])),
    "subspace-lattice": subspace_from_dict,
    "symm-set-lattice": polyhedron_from_dict,
}


def read_json(path):
    """Load JSON, turning syntax errors into ValueError with the location."""
    with open(path) as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def write_text(path, text):
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


class BatchOracle:
    """Replays a JSON-lines request/response file as an oracle."""

    def __init__(self, path, domain_tag):
        self.decode = DECODERS[domain_tag]
        self.table = {}
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    self.table[canonical(rec["request"])] = rec["response"]
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise ProtocolError(f"{path}:{lineno}: bad record ({exc})") from None

    def __call__(self, obj):
        key = canonical(encode(obj))
        if key not in self.table:
            raise ProtocolError("batch file has no response for a request")
        return self.decode(self.table[key])


class Recorder:
    """Wraps an oracle and logs each call as a JSON-lines record."""

    def __init__(self, func, path):
        self.func = func
        self.fh = open(path, "w")

    def __call__(self, obj):
        out = self.func(obj)
        self.fh.write(canonical({"request": encode(obj), "response": encode(out)}) + "\n")
        return out

    def close(self):
        self.fh.close()


def write_grid_csv(path, g):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "value"])
        for x, v in zip(g.x, g.values):
            w.writerow([repr(float(x)), "inf" if np.isinf(v) else repr(float(v))])


def read_grid_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0][:2] == ["x", "value"]:
        rows = rows[1:]
    x = np.array([float(r[0]) for r in rows])
    v = np.array([np.inf if r[1].strip() == "inf" else float(r[1]) for r in rows])
    if len(x) < 2:
        raise ValueError("grid CSV needs at least two rows")
    step = (x[-1] - x[0]) / (len(x) - 1)
    if not np.allclose(np.diff(x), step, rtol=1e-9, atol=1e-12):
        raise ValueError("grid CSV x column is not uniform")
    return GridFunction1D(float(x[0]), float(step), v)
