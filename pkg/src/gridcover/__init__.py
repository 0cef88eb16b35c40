"""Minimum curve covers of finite point sets, mostly integer grids."""

from .config import CAPS, CapExceeded, Caps
from .families import (
    AlgebraicMaxDeg, Circle, ClosedConvex, CoverabilityUnknown, Curve, CurveFamily, FixedRadiusCircle,
    FixedShape, Line, Monotone, Orthoconvex, SkewLine, StrictlyConvex, enumerate_candidates,
    family_from_json, is_coverable,
)
from .geometry import GridSpec, PointSet, grid_points
from .solver import BoundsReport, Cover, exact_min_cover, greedy_cover, lower_bound, verify_cover

__version__ = "0.1.0"

__all__ = [
    "CAPS", "Caps", "CapExceeded", "CoverabilityUnknown",
    "AlgebraicMaxDeg", "Circle", "ClosedConvex", "Curve", "CurveFamily", "FixedRadiusCircle", "FixedShape",
    "Line", "Monotone", "Orthoconvex", "SkewLine", "StrictlyConvex",
    "enumerate_candidates", "family_from_json", "is_coverable",
    "GridSpec", "PointSet", "grid_points",
    "BoundsReport", "Cover", "exact_min_cover", "greedy_cover", "lower_bound", "verify_cover",
]
