"""
Future timelike directions at a point of an analytic ambient, with the exponential and
logarithmic maps along unit-speed geodesics.

Tangents live in ambient coordinates and are unit timelike under the timelike-positive
convention of `AmbientSpec.metric`. Geodesics from p with unit tangent u:

- flat: p + r u
- de Sitter: cosh(r/s) p + s sinh(r/s) u
- anti-de Sitter: cos(r/s) p + s sin(r/s) u, defined for r < pi s
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..config import LORCOMP_CONFIG
from ..errors import CausalityError, DomainError, InvalidPointError, RangeError, SizeBoundError
from ..lorspace import AmbientSpec, ambient_inner, ambient_tau, from_intrinsic
from ..model2d import CausalClass

FloatArray = npt.NDArray[np.float64]

# Directions closer than this are the same point of the space of directions.
SAME_DIRECTION_ANGLE = 1e-6


def _quadric_target(spec: AmbientSpec) -> float | None:
    match spec.kind:
        case "desitter-2":
            return -spec.s * spec.s
        case "antidesitter-2":
            return spec.s * spec.s
        case _:
            return None


def _check_base_point(spec: AmbientSpec, p: FloatArray, tol: float) -> None:
    if p.shape != (spec.dim,):
        raise RangeError(f"{spec.kind} points have {spec.dim} coordinates, got shape {p.shape}")
    target = _quadric_target(spec)
    if target is not None:
        residual = abs(ambient_inner(spec, p, p) - target)
        if residual > tol * max(1.0, float(np.dot(p, p))):
            raise InvalidPointError(f"point {p.tolist()} is off the {spec.kind} quadric")


def _is_future(spec: AmbientSpec, p: FloatArray, u: FloatArray) -> bool:
    if spec.kind == "antidesitter-2":
        return p[0] * u[1] - p[1] * u[0] > 0.0
    return u[0] > 0.0


def _project(spec: AmbientSpec, p: FloatArray, v: FloatArray) -> FloatArray:
    """Component of `v` tangent to the ambient at `p`."""
    target = _quadric_target(spec)
    if target is None:
        return v
    return v - (ambient_inner(spec, v, p) / target) * p


@dataclass(frozen=True, eq=False)
class DirectionSample:
    ambient: AmbientSpec
    p: FloatArray
    u: FloatArray

    def __post_init__(self) -> None:
        tol = LORCOMP_CONFIG.tol
        p = np.array(self.p, dtype=np.float64)
        u = np.array(self.u, dtype=np.float64)
        _check_base_point(self.ambient, p, tol)
        if u.shape != p.shape:
            raise RangeError(f"tangent shape {u.shape} does not match point shape {p.shape}")
        if _quadric_target(self.ambient) is not None:
            off = abs(ambient_inner(self.ambient, p, u))
            if off > tol * max(1.0, float(np.linalg.norm(p) * np.linalg.norm(u))):
                raise InvalidPointError("direction is not tangent to the ambient at p")
        norm = ambient_inner(self.ambient, u, u)
        if abs(norm - 1.0) > tol * max(1.0, float(np.dot(u, u))):
            raise InvalidPointError(f"direction is not unit timelike: g(u,u) = {norm!r}")
        if not _is_future(self.ambient, p, u):
            raise CausalityError("direction is not future pointing")
        p.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "u", u)

    @classmethod
    def from_rapidity(
        cls, spec: AmbientSpec, p: npt.ArrayLike, rapidity: float, bearing: float = 0.0
    ) -> DirectionSample:
        """
        cosh(rapidity) e0 + sinh(rapidity) e(bearing) in the standard frame at `p`.

        `bearing` turns the spatial unit vector and only matters for minkowski-3.
        """
        point = np.asarray(p, dtype=np.float64)
        e0, spatial = standard_frame(spec, point)
        e = spatial[0]
        if len(spatial) > 1:
            e = math.cos(bearing) * spatial[0] + math.sin(bearing) * spatial[1]
        return cls(spec, point, math.cosh(rapidity) * e0 + math.sinh(rapidity) * e)


def standard_frame(spec: AmbientSpec, p: FloatArray) -> tuple[FloatArray, list[FloatArray]]:
    """Future unit timelike e0 at `p` and an orthonormal basis of its spatial complement."""
    _check_base_point(spec, p, LORCOMP_CONFIG.tol)
    if spec.is_flat:
        basis = np.eye(spec.dim)
        return basis[0], [basis[i] for i in range(1, spec.dim)]
    if spec.kind == "antidesitter-2":
        time = np.array([-p[1], p[0], 0.0])
    else:
        time = _project(spec, p, np.array([1.0, 0.0, 0.0]))
    e0 = time / math.sqrt(ambient_inner(spec, time, time))
    for candidate in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])):
        w = _project(spec, p, candidate)
        w = w - ambient_inner(spec, w, e0) * e0
        norm2 = -ambient_inner(spec, w, w)
        if norm2 > 1e-12:
            return e0, [w / math.sqrt(norm2)]
    raise InvalidPointError(f"no spatial tangent found at {p.tolist()}")


def direction_angle(d1: DirectionSample, d2: DirectionSample) -> float:
    """The smooth hyperbolic angle arccosh(g(u1, u2)) between two directions at one point."""
    _same_base(d1, d2)
    return math.acosh(max(1.0, ambient_inner(d1.ambient, d1.u, d2.u)))


def same_direction(d1: DirectionSample, d2: DirectionSample) -> bool:
    return direction_angle(d1, d2) <= SAME_DIRECTION_ANGLE


def _same_base(d1: DirectionSample, d2: DirectionSample) -> None:
    if d1.ambient != d2.ambient:
        raise RangeError(f"directions live in different ambients: {d1.ambient} and {d2.ambient}")
    if not np.allclose(d1.p, d2.p, rtol=0.0, atol=1e-12):
        raise RangeError("directions must share their base point")


def _check_radius(spec: AmbientSpec, r: float) -> None:
    if not (math.isfinite(r) and r >= 0.0):
        raise DomainError(f"geodesic parameter must be finite and nonnegative, got {r!r}")
    if spec.kind == "antidesitter-2" and r >= math.pi * spec.s:
        raise DomainError(
            f"anti-de Sitter geodesics are unique only below pi*s={math.pi * spec.s:.6g}, got {r!r}"
        )


def exp_map(spec: AmbientSpec, p: npt.ArrayLike, r: float, d: DirectionSample) -> FloatArray:
    point = np.asarray(p, dtype=np.float64)
    if d.ambient != spec or not np.allclose(d.p, point, rtol=0.0, atol=1e-12):
        raise RangeError("direction does not start at p")
    _check_radius(spec, r)
    if r == 0.0:
        return d.p.copy()
    s = spec.s
    match spec.kind:
        case "desitter-2":
            return math.cosh(r / s) * d.p + s * math.sinh(r / s) * d.u
        case "antidesitter-2":
            return math.cos(r / s) * d.p + s * math.sin(r / s) * d.u
        case _:
            return d.p + r * d.u


def log_map(
    spec: AmbientSpec, p: npt.ArrayLike, x: npt.ArrayLike
) -> tuple[float, DirectionSample]:
    """(tau(p, x), initial direction of the geodesic from p to x) for x in the future of p."""
    point = np.asarray(p, dtype=np.float64)
    target = np.asarray(x, dtype=np.float64)
    try:
        result = ambient_tau(spec, point, target)
    except SizeBoundError as exc:
        raise DomainError(f"{target.tolist()} is outside the unique-geodesic region of p") from exc
    if result.causal_class is not CausalClass.TIMELIKE_FUTURE:
        raise CausalityError(f"log map needs x in the timelike future of p, got {result.causal_class.value}")
    w = _project(spec, point, target - point)
    u = w / math.sqrt(ambient_inner(spec, w, w))
    return result.tau, DirectionSample(spec, point, u)


def ambient_origin(spec: AmbientSpec) -> FloatArray:
    """The point with intrinsic coordinates zero."""
    width = 3 if spec.kind == "minkowski-3" else 2
    return from_intrinsic(spec, np.zeros((1, width)))[0]
