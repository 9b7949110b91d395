"""
Two-dimensional Lorentzian model planes L^2_K and the hyperbolic plane H^2.

All operations are pure functions of their arguments.
"""

from .angles import (
    comparison_angle,
    comparison_angle_array,
    embedding_angle,
    hinge_tau,
    hinge_tau_array,
    signed_comparison_angle,
)
from .hyperbolic import (
    HPoint,
    h2_angle,
    h2_distance,
    h2_interpolate,
    h2_midpoint,
    realize_h2_triangle,
)
from .plane import (
    CausalClass,
    CurvatureParam,
    ModelPoint,
    RealizedTriangle,
    TauResult,
    TriangleSides,
    Vertex,
    future_tau,
    geodesic_interpolate,
    model_origin,
    realize_triangle,
    reflect_across_geodesic,
    side_of_geodesic,
    tau_model,
)

__all__ = [
    "CausalClass",
    "CurvatureParam",
    "HPoint",
    "ModelPoint",
    "RealizedTriangle",
    "TauResult",
    "TriangleSides",
    "Vertex",
    "comparison_angle",
    "comparison_angle_array",
    "embedding_angle",
    "future_tau",
    "geodesic_interpolate",
    "h2_angle",
    "h2_distance",
    "h2_interpolate",
    "h2_midpoint",
    "hinge_tau",
    "hinge_tau_array",
    "model_origin",
    "realize_h2_triangle",
    "realize_triangle",
    "reflect_across_geodesic",
    "side_of_geodesic",
    "signed_comparison_angle",
    "tau_model",
]
