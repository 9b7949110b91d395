"""
Minkowski cones Con(Y) over finite metric spaces.

A cone point is (r, y) with r >= 0; every (0, y) is the apex. The cone metric uses
cos(min(pi, dY)) and the time separation uses cosh(dY):

    tau^2 = r1^2 + r2^2 - 2 r1 r2 cosh(dY)

on causal pairs, where (r1, y1) <= (r2, y2) needs the radicand >= 0 and r1 <= r2.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ..errors import DomainError, RangeError
from ..lorspace import FiniteLorentzSpace
from ..runtime.logging import get_logger
from .base import FiniteMetricSpace

FloatArray = npt.NDArray[np.float64]

# Radicands within this distance below zero are treated as null.
CAUSAL_CLAMP = 1e-12


@dataclass(frozen=True, slots=True, eq=False)
class ConePoint:
    r: float
    base_index: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise DomainError(f"cone radius must be finite and nonnegative, got {self.r!r}")

    @property
    def is_apex(self) -> bool:
        return self.r == 0.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConePoint):
            return NotImplemented
        if self.is_apex or other.is_apex:
            return self.r == other.r
        return self.r == other.r and self.base_index == other.base_index

    def __hash__(self) -> int:
        return hash((self.r, None if self.is_apex else self.base_index))


class ConeTau(NamedTuple):
    tau: float
    causal: bool
    timelike: bool


def _check_distance(dY: float) -> None:
    if not dY >= 0.0:
        raise DomainError(f"base distance must be nonnegative, got {dY!r}")


def cone_metric(x1: ConePoint, x2: ConePoint, dY: float) -> float:
    _check_distance(dY)
    angle = min(math.pi, dY)
    # r1^2 + r2^2 - 2 r1 r2 cos(a) = (r1 - r2)^2 + 4 r1 r2 sin^2(a/2)
    value = (x1.r - x2.r) ** 2 + 4.0 * x1.r * x2.r * math.sin(angle / 2.0) ** 2
    return math.sqrt(value)


def _radicand(r1: float, r2: float, dY: float) -> float:
    # r1^2 + r2^2 - 2 r1 r2 cosh(d) = (r2 - r1)^2 - 4 r1 r2 sinh^2(d/2)
    return (r2 - r1) ** 2 - 4.0 * r1 * r2 * math.sinh(dY / 2.0) ** 2


def cone_tau(x1: ConePoint, x2: ConePoint, dY: float) -> ConeTau:
    """Time separation from x1 to x2; zero unless x1 <= x2."""
    _check_distance(dY)
    if x1.is_apex:
        return ConeTau(x2.r, True, x2.r > 0.0)
    value = _radicand(x1.r, x2.r, dY)
    if x1.r > x2.r or value < -CAUSAL_CLAMP:
        return ConeTau(0.0, False, False)
    tau = math.sqrt(max(0.0, value))
    return ConeTau(tau, True, tau > 0.0)


def polar_map(r: float, y: float) -> tuple[float, float]:
    """(r, y) on the cone over a line to (r cosh y, r sinh y) in flat R^{1,1}."""
    if not r >= 0.0:
        raise DomainError(f"cone radius must be nonnegative, got {r!r}")
    return r * math.cosh(y), r * math.sinh(y)


def circular_polar_map(r: float, y: float) -> tuple[float, float]:
    """(r, y) to (r cos y, r sin y); the Euclidean image of the cone metric for |dy| <= pi."""
    if not r >= 0.0:
        raise DomainError(f"cone radius must be nonnegative, got {r!r}")
    return r * math.cos(y), r * math.sin(y)


def cone_matrices(
    radii: FloatArray, base_index: npt.NDArray[np.int64], dY: FloatArray
) -> tuple[FloatArray, FloatArray, npt.NDArray[np.bool_]]:
    """Vectorized (d, tau, causal) for cone points with the given radii and base indices."""
    r1 = radii[:, None]
    r2 = radii[None, :]
    dist = dY[np.ix_(base_index, base_index)]
    apex = (r1 == 0.0) | (r2 == 0.0)
    d = np.sqrt((r1 - r2) ** 2 + 4.0 * r1 * r2 * np.sin(np.minimum(dist, math.pi) / 2.0) ** 2)
    value = (r2 - r1) ** 2 - 4.0 * r1 * r2 * np.sinh(dist / 2.0) ** 2
    value = np.where(apex, (r2 - r1) ** 2, value)
    causal = (r1 <= r2) & (value >= -CAUSAL_CLAMP)
    tau = np.where(causal, np.sqrt(np.maximum(value, 0.0)), 0.0)
    return d, tau, causal


def build_cone_space(
    base: FiniteMetricSpace, radii: Sequence[float], *, include_apex: bool = False
) -> FiniteLorentzSpace:
    """
    The cone points (r, y) for every base point y and radius r, base-major, optionally
    preceded by the apex.
    """
    values = np.asarray(radii, dtype=np.float64)
    if values.size == 0 or not np.all(values > 0.0) or not np.all(np.isfinite(values)):
        raise RangeError(f"cone radii must be finite and positive, got {list(radii)}")
    r = np.tile(values, base.n)
    index = np.repeat(np.arange(base.n), values.size)
    if include_apex:
        r = np.concatenate([[0.0], r])
        index = np.concatenate([[0], index])
    d, tau, causal = cone_matrices(r, index, base.dY)
    get_logger().debug(
        "built cone over %d base points with %d radii%s",
        base.n,
        values.size,
        " and apex" if include_apex else "",
    )
    return FiniteLorentzSpace(d=d, tau=tau, causal=causal)
