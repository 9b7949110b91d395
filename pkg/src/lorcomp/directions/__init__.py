"""
Space-of-directions experiments on analytic ambients: angles between geodesics, direction
midpoints, chronology thresholds and tangent-cone blow-ups.
"""

from .angles import (
    DEFAULT_ANGLE_TOL,
    DEFAULT_GRID,
    AngleGrid,
    MonotonicityVerdict,
    angle_estimate,
    comparison_grid,
    geometric_grid,
    theta_monotonicity,
)
from .blowup import (
    BlowupItem,
    BlowupTable,
    blowup_table,
    chronology_threshold,
    lambda_schedule,
    threshold_flip_point,
)
from .midpoint import CauchyDecay, DirectionMidpoint, direction_midpoint, midpoint_cauchy_sequence
from .sample import (
    SAME_DIRECTION_ANGLE,
    DirectionSample,
    ambient_origin,
    direction_angle,
    exp_map,
    log_map,
    same_direction,
    standard_frame,
)

__all__ = [
    "DEFAULT_ANGLE_TOL",
    "DEFAULT_GRID",
    "SAME_DIRECTION_ANGLE",
    "AngleGrid",
    "BlowupItem",
    "BlowupTable",
    "CauchyDecay",
    "DirectionMidpoint",
    "DirectionSample",
    "MonotonicityVerdict",
    "ambient_origin",
    "angle_estimate",
    "blowup_table",
    "chronology_threshold",
    "comparison_grid",
    "direction_angle",
    "direction_midpoint",
    "exp_map",
    "geometric_grid",
    "lambda_schedule",
    "log_map",
    "midpoint_cauchy_sequence",
    "same_direction",
    "standard_frame",
    "theta_monotonicity",
]
