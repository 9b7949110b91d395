"""
Coordinate models of the Lorentzian model planes.

K = 0 is the flat plane with points (t, x, 0). K > 0 is the de Sitter quadric
<p,p> = -s^2 in signature (+,-,-); K < 0 is the anti-de Sitter quadric <p,p> = s^2 in
signature (+,+,-), restricted to the patch where the angular time atan2(p1, p0) is
single valued. Time separations are computed from the ambient chord, which keeps
nearby points accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Literal, NamedTuple

from ..config import LORCOMP_CONFIG
from ..errors import (
    CausalityError,
    DegenerateGeodesicError,
    InvalidPointError,
    InvalidTriangleError,
    RangeError,
    SizeBoundError,
)

Vertex = Literal["x", "y", "z"]
Coords = tuple[float, float, float]


class CausalClass(StrEnum):
    TIMELIKE_FUTURE = "timelike-future"
    TIMELIKE_PAST = "timelike-past"
    NULL = "null"
    SPACELIKE = "spacelike"

    @property
    def is_timelike(self) -> bool:
        return self in (CausalClass.TIMELIKE_FUTURE, CausalClass.TIMELIKE_PAST)


class TauResult(NamedTuple):
    tau: float
    causal_class: CausalClass


@dataclass(frozen=True, slots=True)
class CurvatureParam:
    """Sectional curvature K of the model plane; `s` and `diameter` derive from it."""

    K: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.K):
            raise RangeError(f"curvature must be finite, got {self.K!r}")

    @property
    def s(self) -> float:
        if self.K == 0.0:
            return 1.0
        return 1.0 / math.sqrt(abs(self.K))

    @property
    def diameter(self) -> float:
        if self.K < 0.0:
            return math.pi / math.sqrt(-self.K)
        return math.inf

    @property
    def signature(self) -> Coords:
        if self.K < 0.0:
            return (1.0, 1.0, -1.0)
        return (1.0, -1.0, -1.0)

    def scaled(self, lam: float) -> CurvatureParam:
        """The plane rescaled by `lam` in tau-units: (1/lam) L(K) is L(lam^2 K)."""
        if not lam > 0.0:
            raise RangeError(f"scale factor must be positive, got {lam!r}")
        return CurvatureParam(self.K / (lam * lam))


@dataclass(frozen=True, slots=True)
class ModelPoint:
    coords: Coords

    @classmethod
    def flat(cls, t: float, x: float) -> ModelPoint:
        return cls((float(t), float(x), 0.0))

    def __getitem__(self, index: int) -> float:
        return self.coords[index]


@dataclass(frozen=True, slots=True)
class TriangleSides:
    """Side triple of a timelike triangle x << y << z: a = tau(x,y), b = tau(y,z), c = tau(x,z)."""

    a: float
    b: float
    c: float

    def scaled(self, lam: float) -> TriangleSides:
        return TriangleSides(lam * self.a, lam * self.b, lam * self.c)


@dataclass(frozen=True, slots=True)
class RealizedTriangle:
    param: CurvatureParam
    px: ModelPoint
    py: ModelPoint
    pz: ModelPoint
    sides: TriangleSides

    def vertex(self, name: Vertex) -> ModelPoint:
        match name:
            case "x":
                return self.px
            case "y":
                return self.py
            case "z":
                return self.pz


def inner(param: CurvatureParam, p: Coords, q: Coords) -> float:
    e0, e1, e2 = param.signature
    return e0 * p[0] * q[0] + e1 * p[1] * q[1] + e2 * p[2] * q[2]


def check_point(param: CurvatureParam, p: ModelPoint, tol: float | None = None) -> None:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    if not all(math.isfinite(value) for value in p.coords):
        raise InvalidPointError(f"point has non-finite coordinates: {p.coords}")
    if param.K == 0.0:
        if abs(p.coords[2]) > tol:
            raise InvalidPointError(
                f"flat model points have the form (t, x, 0), got {p.coords}"
            )
        return
    s2 = param.s * param.s
    target = s2 if param.K < 0.0 else -s2
    residual = abs(inner(param, p.coords, p.coords) - target)
    if residual > tol * s2 * max(1.0, _magnitude(p.coords) ** 2 / s2):
        raise InvalidPointError(
            f"point {p.coords} is off the K={param.K} quadric by {residual:.3e}",
            hints=["Build curved model points with realize_triangle or geodesic_interpolate."],
        )


def _magnitude(p: Coords) -> float:
    return math.sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])


def _time_order(param: CurvatureParam, p: Coords, q: Coords) -> float:
    if param.K < 0.0:
        # Pairing with the rotation Killing field (-p1, p0, 0).
        return p[0] * q[1] - p[1] * q[0]
    return q[0] - p[0]


def _tau_from_chord(param: CurvatureParam, chord2: float) -> float:
    chord = math.sqrt(chord2)
    if param.K == 0.0:
        return chord
    s = param.s
    if param.K > 0.0:
        return 2.0 * s * math.asinh(chord / (2.0 * s))
    half = chord / (2.0 * s)
    if half >= 1.0:
        raise SizeBoundError(
            f"time separation reaches the timelike diameter {param.diameter:.6g}",
            hints=["Anti-de Sitter comparisons need every side below pi*s."],
        )
    return 2.0 * s * math.asin(half)


def tau_model(
    param: CurvatureParam,
    p: ModelPoint,
    q: ModelPoint,
    *,
    tol: float | None = None,
) -> TauResult:
    check_point(param, p, tol)
    check_point(param, q, tol)
    d = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
    chord2 = inner(param, d, d)
    if chord2 > 0.0:
        tau = _tau_from_chord(param, chord2)
        if _time_order(param, p.coords, q.coords) > 0.0:
            return TauResult(tau, CausalClass.TIMELIKE_FUTURE)
        return TauResult(tau, CausalClass.TIMELIKE_PAST)
    if chord2 == 0.0:
        return TauResult(0.0, CausalClass.NULL)
    return TauResult(0.0, CausalClass.SPACELIKE)


def future_tau(param: CurvatureParam, p: ModelPoint, q: ModelPoint) -> float:
    """tau(p, q) as a time separation: positive only when q is in the timelike future of p."""
    result = tau_model(param, p, q)
    if result.causal_class is CausalClass.TIMELIKE_FUTURE:
        return result.tau
    return 0.0


def geodesic_interpolate(
    param: CurvatureParam,
    p: ModelPoint,
    q: ModelPoint,
    u: float,
    *,
    tol: float | None = None,
) -> ModelPoint:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    result = tau_model(param, p, q, tol=tol)
    if result.causal_class is not CausalClass.TIMELIKE_FUTURE:
        raise CausalityError(
            f"geodesic interpolation needs p << q, got {result.causal_class.value}"
        )
    tau = result.tau
    slack = tol * max(1.0, tau)
    if u < -slack or u > tau + slack:
        raise RangeError(f"u={u!r} is outside [0, {tau!r}]")
    if u <= 0.0:
        return p
    if u >= tau:
        return q
    if param.K == 0.0:
        w1, w2 = (tau - u) / tau, u / tau
    elif param.K > 0.0:
        s = param.s
        denom = math.sinh(tau / s)
        w1, w2 = math.sinh((tau - u) / s) / denom, math.sinh(u / s) / denom
    else:
        s = param.s
        denom = math.sin(tau / s)
        w1, w2 = math.sin((tau - u) / s) / denom, math.sin(u / s) / denom
    return ModelPoint(
        (
            w1 * p[0] + w2 * q[0],
            w1 * p[1] + w2 * q[1],
            w1 * p[2] + w2 * q[2],
        )
    )


def validate_sides(
    param: CurvatureParam, sides: TriangleSides, *, tol: float | None = None
) -> None:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    a, b, c = sides.a, sides.b, sides.c
    if min(a, b, c) < 0.0 or not all(math.isfinite(v) for v in (a, b, c)):
        raise InvalidTriangleError(f"sides must be finite and nonnegative, got {sides}")
    scale = max(1.0, c)
    if c < a + b - tol * scale:
        raise InvalidTriangleError(
            f"reverse triangle inequality violated: c={c!r} < a+b={a + b!r}"
        )
    if a == 0.0 and abs(c - b) > tol * scale:
        raise InvalidTriangleError("a zero side a=tau(x,y) requires b == c")
    if b == 0.0 and abs(c - a) > tol * scale:
        raise InvalidTriangleError("a zero side b=tau(y,z) requires a == c")
    if c >= param.diameter:
        raise SizeBoundError(
            f"side c={c!r} is not below the timelike diameter {param.diameter:.6g}"
        )


def _point_along(param: CurvatureParam, length: float, rapidity: float) -> ModelPoint:
    """Point at time separation `length` from the canonical origin along `rapidity`."""
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    if param.K == 0.0:
        return ModelPoint((length * ch, length * sh, 0.0))
    s = param.s
    if param.K > 0.0:
        r = length / s
        return ModelPoint((s * math.sinh(r) * ch, s * math.cosh(r), s * math.sinh(r) * sh))
    r = length / s
    return ModelPoint((s * math.cos(r), s * math.sin(r) * ch, s * math.sin(r) * sh))


def model_origin(param: CurvatureParam) -> ModelPoint:
    return _point_along(param, 0.0, 0.0)


def realize_triangle(
    param: CurvatureParam, sides: TriangleSides, *, tol: float | None = None
) -> RealizedTriangle:
    from .angles import comparison_angle

    validate_sides(param, sides, tol=tol)
    if sides.a > 0.0 and sides.c > 0.0:
        omega = comparison_angle(param, sides, "x", tol=tol)
    else:
        omega = 0.0
    return RealizedTriangle(
        param=param,
        px=_point_along(param, 0.0, 0.0),
        py=_point_along(param, sides.a, 0.0),
        pz=_point_along(param, sides.c, omega),
        sides=sides,
    )


def _cross(p: Coords, q: Coords) -> Coords:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def reflect_across_geodesic(
    param: CurvatureParam,
    g1: ModelPoint,
    g2: ModelPoint,
    r: ModelPoint,
    *,
    tol: float | None = None,
) -> ModelPoint:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    if param.K == 0.0:
        w = (g2[0] - g1[0], g2[1] - g1[1], 0.0)
        scale = w[0] * w[0] + w[1] * w[1]
        norm = inner(param, w, w)
        if scale == 0.0 or abs(norm) <= tol * scale:
            raise DegenerateGeodesicError(
                f"points {g1.coords} and {g2.coords} do not span a non-null geodesic"
            )
        delta = (r[0] - g1[0], r[1] - g1[1], r[2] - g1[2])
        k = 2.0 * inner(param, delta, w) / norm
        return ModelPoint(
            (
                g1[0] + k * w[0] - delta[0],
                g1[1] + k * w[1] - delta[1],
                r[2],
            )
        )
    e = param.signature
    cross = _cross(g1.coords, g2.coords)
    n = (e[0] * cross[0], e[1] * cross[1], e[2] * cross[2])
    scale = _magnitude(g1.coords) * _magnitude(g2.coords)
    norm = inner(param, n, n)
    if _magnitude(cross) <= tol * scale or abs(norm) <= tol * scale * scale:
        raise DegenerateGeodesicError(
            f"points {g1.coords} and {g2.coords} do not span a non-null geodesic"
        )
    k = 2.0 * inner(param, r.coords, n) / norm
    return ModelPoint((r[0] - k * n[0], r[1] - k * n[1], r[2] - k * n[2]))


def side_of_geodesic(
    param: CurvatureParam, g1: ModelPoint, g2: ModelPoint, r: ModelPoint
) -> float:
    """Signed quantity whose sign tells on which side of the geodesic g1 g2 the point r lies."""
    if param.K == 0.0:
        return (g2[0] - g1[0]) * (r[1] - g1[1]) - (g2[1] - g1[1]) * (r[0] - g1[0])
    cross = _cross(g1.coords, g2.coords)
    return cross[0] * r[0] + cross[1] * r[1] + cross[2] * r[2]
