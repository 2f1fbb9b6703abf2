"""Exact convex duality for piecewise-linear functions and order transforms on R^n."""

from .core import (AffineFunctional, GridFunction1D, PLConvexFunction, add, canonicalize,
                   evaluate, homogenize, is_leq, is_proper, lipschitz_bound, lsc_hull_grid,
                   max2, minimize_pl, minorants, scale, sup_family)
from .exceptions import (AuditError, DimensionError, ImproperFunctionError,
                         NonRepresentableError, NotHomogeneousError)
from .fenchel import biconjugate, conjugate_grid, conjugate_pl
from .polyhedron import Polyhedron, polar
from .cones import (HomogeneousFunction, MinkowskiGauge, Seminorm, SublinearFunction,
                    body_of, gauge, hom_power, hom_root, support_function)
from .lattice import (Segment, Subspace, check_lattice_iso, extend_to_compact, join_convex,
                      join_sub, meet_convex, meet_sub)
from .transforms import CanonicalTransform, apply, compose, invert
from .reconstruct import (RecoveredMap, TransformOracle, identify_preserving,
                          identify_reversing, recover_from_segments, recover_homogeneous_map,
                          recover_linear_subspaces, recover_mink_map, recover_seminorm_map,
                          recover_sublinear_map)

__all__ = [
    "AffineFunctional", "GridFunction1D", "PLConvexFunction", "add", "canonicalize",
    "evaluate", "homogenize", "is_leq", "is_proper", "lipschitz_bound", "lsc_hull_grid",
    "max2", "minimize_pl", "minorants", "scale", "sup_family", "AuditError",
    "DimensionError", "ImproperFunctionError", "NonRepresentableError",
    "NotHomogeneousError", "biconjugate", "conjugate_grid", "conjugate_pl", "Polyhedron",
    "polar", "HomogeneousFunction", "MinkowskiGauge", "Seminorm", "SublinearFunction",
    "body_of", "gauge", "hom_power", "hom_root", "support_function", "Segment", "Subspace",
    "check_lattice_iso", "extend_to_compact", "join_convex", "join_sub", "meet_convex",
    "meet_sub", "CanonicalTransform", "apply", "compose", "invert", "RecoveredMap",
    "TransformOracle", "identify_preserving", "identify_reversing",
    "recover_from_segments", "recover_homogeneous_map", "recover_linear_subspaces",
    "recover_mink_map", "recover_seminorm_map", "recover_sublinear_map"
]

__version__ = "0.1.0"
