"""
Finite metric spaces used as cone bases, their file format and the sample generators.

Hyperbolic samples keep their hyperboloid coordinates in `points` so exact geodesic
midpoints can be appended; Euclidean samples keep plane coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from ..config import LORCOMP_CONFIG
from ..errors import GenerationError, StructuralError
from ..lorspace.io import format_number, parse_model, render_matrices, write_atomic
from ..runtime.logging import get_logger

FloatArray = npt.NDArray[np.float64]

BaseKind = Literal["point", "h1", "h2-disc", "euclidean-disc", "tree"]


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A finite metric space given by its distance matrix `dY`."""

    dY: FloatArray
    points: FloatArray | None = None
    kind: BaseKind | None = None

    def __post_init__(self) -> None:
        dY = np.array(self.dY, dtype=np.float64, copy=True)
        if dY.ndim != 2 or dY.shape[0] != dY.shape[1]:
            raise StructuralError(f"invalid base: dY must be square, got shape {dY.shape}")
        _check_metric(dY, LORCOMP_CONFIG.tol)
        dY.setflags(write=False)
        object.__setattr__(self, "dY", dY)
        if self.points is not None:
            points = np.array(self.points, dtype=np.float64, copy=True)
            if points.shape[0] != dY.shape[0]:
                raise StructuralError(
                    f"invalid base: {points.shape[0]} coordinate rows for {dY.shape[0]} points"
                )
            points.setflags(write=False)
            object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return int(self.dY.shape[0])


def _check_metric(dY: FloatArray, tol: float) -> None:
    if not np.all(np.isfinite(dY)):
        raise StructuralError("invalid base: distances must be finite")
    scale = max(1.0, float(np.max(dY, initial=0.0)))
    slack = tol * scale
    if np.any(dY < -slack):
        raise StructuralError("invalid base: negative distance")
    if np.any(np.abs(dY - dY.T) > slack):
        raise StructuralError("invalid base: dY is not symmetric")
    if np.any(np.abs(np.diag(dY)) > slack):
        raise StructuralError("invalid base: nonzero diagonal")
    for j in range(dY.shape[0]):
        # d(i,k) <= d(i,j) + d(j,k) for every i, k through j.
        excess = dY - (dY[:, j][:, None] + dY[j, :][None, :])
        if np.any(excess > slack):
            i, k = np.unravel_index(int(np.argmax(excess)), excess.shape)
            raise StructuralError(
                f"invalid base: triangle inequality fails for ({i}, {j}, {k}) "
                f"by {float(excess[i, k]):.3e}"
            )


class BaseFile(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    n: int = Field(ge=0)
    dY: list[list[float]]


def save_base(base: FiniteMetricSpace, path: Path) -> None:
    rows = [[format_number(v) for v in row] for row in base.dY]
    write_atomic(path, render_matrices({"n": base.n}, {"dY": rows}))


def load_base(path: Path) -> FiniteMetricSpace:
    parsed = parse_model(BaseFile, path)
    if len(parsed.dY) != parsed.n or any(len(row) != parsed.n for row in parsed.dY):
        raise StructuralError(f"matrix 'dY' in {path} is not {parsed.n}x{parsed.n}")
    return FiniteMetricSpace(dY=np.array(parsed.dY, dtype=np.float64).reshape(parsed.n, parsed.n))


def hyperboloid_distances(points: FloatArray) -> FloatArray:
    """Pairwise H^2 distances of points on the unit hyperboloid, signature (-,+,+)."""
    diff = points[:, None, :] - points[None, :, :]
    chord2 = -diff[..., 0] ** 2 + diff[..., 1] ** 2 + diff[..., 2] ** 2
    return 2.0 * np.arcsinh(np.sqrt(np.maximum(chord2, 0.0)) / 2.0)


def _hyperboloid_midpoints(points: FloatArray, pairs: npt.NDArray[np.int64]) -> FloatArray:
    total = points[pairs[:, 0]] + points[pairs[:, 1]]
    norm = np.sqrt(total[:, 0] ** 2 - total[:, 1] ** 2 - total[:, 2] ** 2)
    return total / norm[:, None]


def _random_pairs(rng: np.random.Generator, n: int, count: int) -> npt.NDArray[np.int64]:
    if n < 2:
        raise GenerationError("midpoints need at least two sample points")
    first = rng.integers(n, size=count)
    second = (first + rng.integers(1, n, size=count)) % n
    return np.stack([first, second], axis=1)


def _check_sample(n: int, midpoints: int) -> None:
    if n < 0 or midpoints < 0:
        raise GenerationError(f"point counts must be nonnegative, got n={n}, midpoints={midpoints}")


def single_point() -> FiniteMetricSpace:
    return FiniteMetricSpace(dY=np.zeros((1, 1)), points=np.array([[1.0, 0.0, 0.0]]), kind="point")


def h1_sample(
    n: int, seed: int, *, half_width: float = 1.0, midpoints: int = 0
) -> FiniteMetricSpace:
    """Uniform points of the real line in [-half_width, half_width], embedded as a geodesic of H^2."""
    _check_sample(n, midpoints)
    rng = np.random.default_rng(seed)
    y = np.sort(rng.uniform(-half_width, half_width, size=n))
    if midpoints:
        pairs = _random_pairs(rng, n, midpoints)
        y = np.concatenate([y, (y[pairs[:, 0]] + y[pairs[:, 1]]) / 2.0])
    points = np.stack([np.cosh(y), np.sinh(y), np.zeros_like(y)], axis=1)
    return FiniteMetricSpace(dY=np.abs(y[:, None] - y[None, :]), points=points, kind="h1")


def h2_disc_sample(
    n: int, seed: int, *, radius: float = 1.0, midpoints: int = 0
) -> FiniteMetricSpace:
    """
    Points of the hyperbolic disc of the given radius, uniform in area.

    With `midpoints > 0`, exact geodesic midpoints of random sample pairs are appended.
    """
    _check_sample(n, midpoints)
    rng = np.random.default_rng(seed)
    # Area grows like cosh(r) - 1; invert the radial distribution.
    u = rng.uniform(size=n)
    r = np.arccosh(1.0 + u * (math.cosh(radius) - 1.0))
    bearing = rng.uniform(0.0, 2.0 * math.pi, size=n)
    points = np.stack(
        [np.cosh(r), np.sinh(r) * np.cos(bearing), np.sinh(r) * np.sin(bearing)], axis=1
    )
    if midpoints:
        points = np.vstack([points, _hyperboloid_midpoints(points, _random_pairs(rng, n, midpoints))])
    return FiniteMetricSpace(dY=hyperboloid_distances(points), points=points, kind="h2-disc")


def euclidean_disc_sample(
    n: int, seed: int, *, radius: float = 1.0, midpoints: int = 0
) -> FiniteMetricSpace:
    """Points of the Euclidean disc, uniform in area, with optional exact midpoints."""
    _check_sample(n, midpoints)
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=n))
    bearing = rng.uniform(0.0, 2.0 * math.pi, size=n)
    points = np.stack([r * np.cos(bearing), r * np.sin(bearing)], axis=1)
    if midpoints:
        pairs = _random_pairs(rng, n, midpoints)
        points = np.vstack([points, (points[pairs[:, 0]] + points[pairs[:, 1]]) / 2.0])
    dY = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    return FiniteMetricSpace(dY=dY, points=points, kind="euclidean-disc")


def star_tree(arms: int, points_per_arm: int, spacing: float = 0.25) -> FiniteMetricSpace:
    """The centre of a star plus points at spacing, 2*spacing, ... along each arm."""
    if arms < 1 or points_per_arm < 0 or not spacing > 0.0:
        raise GenerationError(
            f"star tree needs arms >= 1, points_per_arm >= 0 and spacing > 0, "
            f"got {arms}, {points_per_arm}, {spacing}"
        )
    arm = np.concatenate([[0], np.repeat(np.arange(arms), points_per_arm)])
    height = np.concatenate([[0.0], np.tile(spacing * np.arange(1, points_per_arm + 1), arms)])
    same_arm = arm[:, None] == arm[None, :]
    dY = np.where(
        same_arm,
        np.abs(height[:, None] - height[None, :]),
        height[:, None] + height[None, :],
    )
    return FiniteMetricSpace(dY=dY, kind="tree")


def make_base(kind: BaseKind, n: int, seed: int, *, midpoints: int = 0) -> FiniteMetricSpace:
    """Dispatch used by the command line: `n` is the sample size (arms * 4 points for trees)."""
    logger = get_logger()
    match kind:
        case "point":
            base = single_point()
        case "h1":
            base = h1_sample(n, seed, midpoints=midpoints)
        case "h2-disc":
            base = h2_disc_sample(n, seed, midpoints=midpoints)
        case "euclidean-disc":
            base = euclidean_disc_sample(n, seed, midpoints=midpoints)
        case "tree":
            base = star_tree(max(1, n // 4), 4)
    logger.debug("generated %s base with %d points", kind, base.n)
    return base
