"""Instance generators: sprinkles of analytic ambients and collinear chains."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import GenerationError, SizeBoundError
from ..runtime.logging import get_logger
from .ambient import AmbientSpec, FloatArray, ambient_geodesic, from_intrinsic, tau_matrix
from .space import FiniteLorentzSpace

DEFAULT_MIDPOINT_MUS = (0.25, 0.5, 0.75)


@dataclass(frozen=True, slots=True)
class Region:
    """
    Coordinate box. For flat kinds the coordinates are (t, x[, y]); for curved kinds they
    are intrinsic (T, x) with T proper time along the central geodesic.
    """

    t_min: float
    t_max: float
    x_min: float
    x_max: float
    y_min: float = 0.0
    y_max: float = 0.0

    @classmethod
    def parse(cls, text: str) -> Region:
        """Parse `t0,t1,x0,x1[,y0,y1]`."""
        try:
            values = [float(part) for part in text.split(",")]
        except ValueError:
            raise GenerationError(f"region must be comma separated numbers, got {text!r}") from None
        if len(values) not in (4, 6):
            raise GenerationError(f"region needs 4 or 6 numbers, got {len(values)}")
        return cls(*values)

    def bounds(self, dim: int) -> tuple[FloatArray, FloatArray]:
        lows = [self.t_min, self.x_min, self.y_min][:dim]
        highs = [self.t_max, self.x_max, self.y_max][:dim]
        return np.array(lows), np.array(highs)


def check_region(spec: AmbientSpec, region: Region) -> None:
    """Raise `GenerationError` when `region` is empty or too large for `spec`."""
    dim = 3 if spec.kind == "minkowski-3" else 2
    lows, highs = region.bounds(dim)
    if not np.all(highs > lows):
        raise GenerationError(
            f"region {region} is empty for {spec.kind}",
            hints=["minkowski-3 regions need six numbers: t0,t1,x0,x1,y0,y1."]
            if spec.kind == "minkowski-3"
            else None,
        )
    if spec.kind == "antidesitter-2" and region.t_max - region.t_min >= math.pi * spec.s:
        raise GenerationError(
            f"anti-de Sitter regions must span less than pi*s={math.pi * spec.s:.6g} in time"
        )
    if spec.kind == "desitter-2" and region.x_max - region.x_min >= 2.0 * math.pi * spec.s:
        raise GenerationError("de Sitter regions must span less than one spatial period")


def space_from_points(spec: AmbientSpec, points: FloatArray) -> FiniteLorentzSpace:
    """Exact space induced on ambient points; d is the Euclidean coordinate distance."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, spec.dim)
    try:
        tau, causal = tau_matrix(spec, points)
    except SizeBoundError as exc:
        raise GenerationError(str(exc)) from exc
    d = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    return FiniteLorentzSpace(d=d, tau=tau, causal=causal, ambient=spec, coords=points)


def sprinkle(
    spec: AmbientSpec,
    region: Region,
    n: int,
    seed: int,
    *,
    midpoints: int = 0,
    mus: Sequence[float] = DEFAULT_MIDPOINT_MUS,
) -> FiniteLorentzSpace:
    """
    Draw `n` points uniformly in the coordinate box and return the exact induced space.

    With `midpoints > 0`, that many exact mu-midpoints of randomly chosen timelike pairs
    are appended after the sprinkled points.
    """
    if n < 0 or midpoints < 0:
        raise GenerationError(f"point counts must be nonnegative, got n={n}, midpoints={midpoints}")
    check_region(spec, region)
    rng = np.random.default_rng(seed)
    dim = 3 if spec.kind == "minkowski-3" else 2
    lows, highs = region.bounds(dim)
    intrinsic = rng.uniform(lows, highs, size=(n, dim))
    points = from_intrinsic(spec, intrinsic) if n else np.zeros((0, spec.dim))
    if midpoints:
        points = _append_midpoints(spec, points, midpoints, mus, rng)
    space = space_from_points(spec, points)
    get_logger().debug("sprinkled %d points (%d midpoints) into %s", space.n, midpoints, spec.kind)
    return space


def _append_midpoints(
    spec: AmbientSpec,
    points: FloatArray,
    count: int,
    mus: Sequence[float],
    rng: np.random.Generator,
) -> FloatArray:
    tau, _ = tau_matrix(spec, points)
    pairs = np.argwhere(tau > 0.0)
    if len(pairs) == 0:
        raise GenerationError("no timelike pair to insert midpoints into")
    extra = []
    for _ in range(count):
        i, j = pairs[rng.integers(len(pairs))]
        mu = float(mus[rng.integers(len(mus))])
        extra.append(ambient_geodesic(spec, points[i], points[j], mu * float(tau[i, j])))
    return np.vstack([points, np.array(extra)])


def chain_space(n: int, spacing: float = 1.0) -> FiniteLorentzSpace:
    """`n` points on the time axis of 2-D Minkowski at t = spacing, 2*spacing, ..."""
    if n < 0:
        raise GenerationError(f"n must be nonnegative, got {n}")
    t = spacing * np.arange(1, n + 1, dtype=np.float64)
    points = np.stack([t, np.zeros(n)], axis=1)
    return space_from_points(AmbientSpec("minkowski-2"), points)
