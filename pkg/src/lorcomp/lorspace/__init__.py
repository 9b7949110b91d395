"""
Finite Lorentzian pre-length spaces, analytic ambients and their generators.
"""

from .ambient import (
    AmbientKind,
    AmbientSpec,
    ambient_geodesic,
    ambient_inner,
    ambient_tau,
    from_intrinsic,
    tau_matrix,
)
from .io import load_space, save_space
from .space import (
    AxiomReport,
    AxiomViolation,
    FiniteLorentzSpace,
    SpaceSummary,
    space_summary,
    validate_axioms,
)
from .sprinkle import Region, chain_space, check_region, space_from_points, sprinkle

__all__ = [
    "AmbientKind",
    "AmbientSpec",
    "AxiomReport",
    "AxiomViolation",
    "FiniteLorentzSpace",
    "Region",
    "SpaceSummary",
    "ambient_geodesic",
    "ambient_inner",
    "ambient_tau",
    "chain_space",
    "check_region",
    "from_intrinsic",
    "load_space",
    "save_space",
    "space_from_points",
    "space_summary",
    "sprinkle",
    "tau_matrix",
    "validate_axioms",
]
