"""
lorcomp: timelike curvature bounds for finite and analytic Lorentzian spaces.

This package uses a src-layout. Import the package as `lorcomp`.
"""

from importlib import metadata


def _resolve_version() -> str:
    try:
        return metadata.version("lorcomp")
    except metadata.PackageNotFoundError:
        return "0.0.0"


__version__ = _resolve_version()

from .config import (  # noqa: E402
    LORCOMP_CONFIG,
    LorcompConfig,
    get_threads,
    get_tol,
    reload_config,
    set_threads,
    set_tol,
)
from .errors import (  # noqa: E402
    CausalityError,
    DegenerateAngleError,
    DegenerateGeodesicError,
    DomainError,
    GenerationError,
    InvalidMetricTriangleError,
    InvalidPointError,
    InvalidTriangleError,
    LorcompError,
    LorcompExecutionError,
    NumericalError,
    RangeError,
    SizeBoundError,
    SpaceParseError,
    StructuralError,
)
from .runtime import configure_logging, get_logger, load_env, log  # noqa: E402

__all__ = [
    "LORCOMP_CONFIG",
    "CausalityError",
    "DegenerateAngleError",
    "DegenerateGeodesicError",
    "DomainError",
    "GenerationError",
    "InvalidMetricTriangleError",
    "InvalidPointError",
    "InvalidTriangleError",
    "LorcompConfig",
    "LorcompError",
    "LorcompExecutionError",
    "NumericalError",
    "RangeError",
    "SizeBoundError",
    "SpaceParseError",
    "StructuralError",
    "__version__",
    "configure_logging",
    "get_logger",
    "get_threads",
    "get_tol",
    "load_env",
    "log",
    "reload_config",
    "set_threads",
    "set_tol",
]
