"""
Timelike curvature-bound checkers and the scans that run them over finite spaces.
"""

from .epsmu import (
    DEFAULT_EPS,
    DEFAULT_EPS_SLACK,
    DEFAULT_MUS,
    eps_mu_condition_scan,
    find_eps_mu_midpoints,
)
from .fourpoint import (
    KMonotonicity,
    four_point_lower_margin,
    four_point_margin,
    four_point_upper_margins,
    k_monotonicity,
    scan_four_point,
)
from .triangle import triangle_condition_check
from .verdict import (
    SCHEMA_VERSION,
    EpsLevel,
    LevelTally,
    QuadrupleTaus,
    ScanReport,
    ScanTally,
    Side,
    Verdict,
    Witness,
    eps_schedule,
    fit_log_slope,
    merge_tallies,
)

__all__ = [
    "DEFAULT_EPS",
    "DEFAULT_EPS_SLACK",
    "DEFAULT_MUS",
    "SCHEMA_VERSION",
    "EpsLevel",
    "KMonotonicity",
    "LevelTally",
    "QuadrupleTaus",
    "ScanReport",
    "ScanTally",
    "Side",
    "Verdict",
    "Witness",
    "eps_mu_condition_scan",
    "eps_schedule",
    "fit_log_slope",
    "find_eps_mu_midpoints",
    "four_point_lower_margin",
    "four_point_margin",
    "four_point_upper_margins",
    "k_monotonicity",
    "merge_tallies",
    "scan_four_point",
    "triangle_condition_check",
]
