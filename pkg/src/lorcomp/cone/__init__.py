"""
Minkowski cones over finite metric spaces and the cone-to-base transfer.
"""

from .base import (
    BaseKind,
    FiniteMetricSpace,
    euclidean_disc_sample,
    h1_sample,
    h2_disc_sample,
    hyperboloid_distances,
    load_base,
    make_base,
    save_base,
    single_point,
    star_tree,
)
from .cone import (
    ConePoint,
    ConeTau,
    build_cone_space,
    circular_polar_map,
    cone_matrices,
    cone_metric,
    cone_tau,
    polar_map,
)
from .transfer import (
    TransferFit,
    TransferQuantities,
    base_curvature_minus1_check,
    midpoint_defects,
    transfer_quantities,
    transfer_slope_fit,
)

__all__ = [
    "BaseKind",
    "ConePoint",
    "ConeTau",
    "FiniteMetricSpace",
    "TransferFit",
    "TransferQuantities",
    "base_curvature_minus1_check",
    "build_cone_space",
    "circular_polar_map",
    "cone_matrices",
    "cone_metric",
    "cone_tau",
    "euclidean_disc_sample",
    "h1_sample",
    "h2_disc_sample",
    "hyperboloid_distances",
    "load_base",
    "make_base",
    "midpoint_defects",
    "polar_map",
    "save_base",
    "single_point",
    "star_tree",
    "transfer_quantities",
    "transfer_slope_fit",
]
