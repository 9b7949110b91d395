"""The hyperbolic plane H^2 as the upper unit hyperboloid in R^{1,2}, signature (-,+,+)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import LORCOMP_CONFIG
from ..errors import InvalidMetricTriangleError, InvalidPointError, RangeError

Coords = tuple[float, float, float]


@dataclass(frozen=True, slots=True)
class HPoint:
    coords: Coords

    @classmethod
    def from_polar(cls, radius: float, bearing: float) -> HPoint:
        """Point at hyperbolic distance `radius` from (1, 0, 0) in direction `bearing`."""
        sh = math.sinh(radius)
        return cls((math.cosh(radius), sh * math.cos(bearing), sh * math.sin(bearing)))

    def __getitem__(self, index: int) -> float:
        return self.coords[index]


ORIGIN = HPoint((1.0, 0.0, 0.0))


def h2_inner(u: Coords, v: Coords) -> float:
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def check_hpoint(u: HPoint, tol: float | None = None) -> None:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    residual = abs(h2_inner(u.coords, u.coords) + 1.0)
    if u[0] < 1.0 - tol or residual > tol * max(1.0, u[0] * u[0]):
        raise InvalidPointError(
            f"point {u.coords} is not on the upper unit hyperboloid (residual {residual:.3e})"
        )


def h2_distance(u: HPoint, v: HPoint, *, tol: float | None = None) -> float:
    check_hpoint(u, tol)
    check_hpoint(v, tol)
    diff = (v[0] - u[0], v[1] - u[1], v[2] - u[2])
    # cosh(d) - 1 = <v-u, v-u> / 2
    chord2 = max(0.0, h2_inner(diff, diff))
    return 2.0 * math.asinh(math.sqrt(chord2) / 2.0)


def realize_h2_triangle(
    d12: float, d13: float, d23: float, *, tol: float | None = None
) -> tuple[HPoint, HPoint, HPoint]:
    """Place u1 at the origin, u2 on the first axis, u3 in the upper half plane."""
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    sides = (d12, d13, d23)
    if min(sides) < 0.0 or not all(math.isfinite(d) for d in sides):
        raise InvalidMetricTriangleError(f"distances must be finite and nonnegative, got {sides}")
    scale = max(1.0, *sides)
    if d23 > d12 + d13 + tol * scale or d12 > d13 + d23 + tol * scale or d13 > d12 + d23 + tol * scale:
        raise InvalidMetricTriangleError(f"triangle inequality violated by {sides}")
    u1 = ORIGIN
    u2 = HPoint.from_polar(d12, 0.0)
    if d12 == 0.0 or d13 == 0.0:
        return u1, u2, HPoint.from_polar(d13, 0.0)
    # Half-angle form of the hyperbolic law of cosines.
    sin2 = (
        math.sinh(max(0.0, d23 + d12 - d13) / 2.0)
        * math.sinh(max(0.0, d23 - d12 + d13) / 2.0)
        / (math.sinh(d12) * math.sinh(d13))
    )
    sin2 = min(1.0, max(0.0, sin2))
    sin_half = math.sqrt(sin2)
    cos_half = math.sqrt(1.0 - sin2)
    cos_g = 1.0 - 2.0 * sin2
    sin_g = 2.0 * sin_half * cos_half
    sh = math.sinh(d13)
    u3 = HPoint((math.cosh(d13), sh * cos_g, sh * sin_g))
    return u1, u2, u3


def h2_midpoint(u: HPoint, v: HPoint) -> HPoint:
    total = (u[0] + v[0], u[1] + v[1], u[2] + v[2])
    norm = math.sqrt(-h2_inner(total, total))
    return HPoint((total[0] / norm, total[1] / norm, total[2] / norm))


def h2_interpolate(u: HPoint, v: HPoint, fraction: float) -> HPoint:
    """Point on the geodesic from u to v at `fraction` of the distance from u."""
    if not 0.0 <= fraction <= 1.0:
        raise RangeError(f"fraction must lie in [0, 1], got {fraction!r}")
    d = h2_distance(u, v)
    if d == 0.0 or fraction == 0.0:
        return u
    if fraction == 1.0:
        return v
    w1 = math.sinh((1.0 - fraction) * d) / math.sinh(d)
    w2 = math.sinh(fraction * d) / math.sinh(d)
    return HPoint(
        (
            w1 * u[0] + w2 * v[0],
            w1 * u[1] + w2 * v[1],
            w1 * u[2] + w2 * v[2],
        )
    )


def h2_angle(u: HPoint, v: HPoint, w: HPoint) -> float:
    """Riemannian angle at `u` between the geodesics towards `v` and `w`."""
    kv = h2_inner(u.coords, v.coords)
    kw = h2_inner(u.coords, w.coords)
    tv = (v[0] + kv * u[0], v[1] + kv * u[1], v[2] + kv * u[2])
    tw = (w[0] + kw * u[0], w[1] + kw * u[1], w[2] + kw * u[2])
    nv = math.sqrt(max(0.0, h2_inner(tv, tv)))
    nw = math.sqrt(max(0.0, h2_inner(tw, tw)))
    if nv == 0.0 or nw == 0.0:
        raise RangeError("h2_angle needs points distinct from the vertex")
    cos = h2_inner(tv, tw) / (nv * nw)
    return math.acos(min(1.0, max(-1.0, cos)))
