"""
Comparison angles in the model planes.

The law of cosines is used in factored form: each formula returns cosh(omega) - 1 as a
product that contains (c - a - b) explicitly, so collinear triples give exactly zero and
small angles keep full relative precision.
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
import numpy.typing as npt

from ..errors import DegenerateAngleError, RangeError, SizeBoundError
from .plane import (
    CurvatureParam,
    ModelPoint,
    TriangleSides,
    Vertex,
    inner,
    validate_sides,
)

HingeKind = Literal["outward", "through"]

# Relative size of (c - a - b) below which a triple is treated as collinear.
_COLLINEAR_RTOL = 1e-14


def _adjacent(sides: TriangleSides, vertex: Vertex) -> tuple[float, float]:
    match vertex:
        case "x":
            return sides.a, sides.c
        case "y":
            return sides.a, sides.b
        case "z":
            return sides.b, sides.c


def _cosh_excess(param: CurvatureParam, sides: TriangleSides, vertex: Vertex) -> float:
    a, b, c = sides.a, sides.b, sides.c
    defect = c - a - b
    if defect <= _COLLINEAR_RTOL * c:
        return 0.0
    if param.K == 0.0:
        match vertex:
            case "y":
                return defect * (c + a + b) / (2.0 * a * b)
            case "x":
                return defect * (c - a + b) / (2.0 * a * c)
            case "z":
                return defect * (c - b + a) / (2.0 * b * c)
    s = param.s
    a, b, c, defect = a / s, b / s, c / s, defect / s
    f = math.sinh if param.K > 0.0 else math.sin
    match vertex:
        case "y":
            value = 2.0 * f((c + a + b) / 2.0) * f(defect / 2.0) / (f(a) * f(b))
        case "x":
            value = 2.0 * f((c - a + b) / 2.0) * f(defect / 2.0) / (f(a) * f(c))
        case "z":
            value = 2.0 * f((c - b + a) / 2.0) * f(defect / 2.0) / (f(b) * f(c))
    return max(0.0, value)


def _angle_from_excess(excess: float) -> float:
    # cosh(w) - 1 = 2 sinh(w/2)^2
    return 2.0 * math.asinh(math.sqrt(excess / 2.0))


def comparison_angle(
    param: CurvatureParam,
    sides: TriangleSides,
    vertex: Vertex,
    *,
    tol: float | None = None,
) -> float:
    """Hyperbolic angle of the comparison triangle of `sides` in L^2_K at `vertex`."""
    validate_sides(param, sides, tol=tol)
    first, second = _adjacent(sides, vertex)
    if first == 0.0 or second == 0.0:
        raise DegenerateAngleError(
            f"angle at vertex {vertex!r} needs positive adjacent sides, got {sides}"
        )
    return _angle_from_excess(_cosh_excess(param, sides, vertex))


def signed_comparison_angle(
    param: CurvatureParam,
    sides: TriangleSides,
    vertex: Vertex,
    *,
    tol: float | None = None,
) -> float:
    sigma = 1.0 if vertex == "y" else -1.0
    return sigma * comparison_angle(param, sides, vertex, tol=tol)


def _tangent(param: CurvatureParam, base: ModelPoint, toward: ModelPoint) -> tuple[float, float, float]:
    w = (toward[0] - base[0], toward[1] - base[1], toward[2] - base[2])
    if param.K == 0.0:
        return w
    k = inner(param, base.coords, toward.coords) / inner(param, base.coords, base.coords)
    return (toward[0] - k * base[0], toward[1] - k * base[1], toward[2] - k * base[2])


def embedding_angle(
    param: CurvatureParam, vertex: ModelPoint, p: ModelPoint, q: ModelPoint
) -> float:
    """
    Angle at `vertex` between the geodesics towards `p` and `q`, measured on coordinates.

    Both tangents are projected to the tangent plane at `vertex` and normalized; the angle
    is arccosh of the magnitude of their inner product.
    """
    u = _tangent(param, vertex, p)
    v = _tangent(param, vertex, q)
    nu = math.sqrt(abs(inner(param, u, u)))
    nv = math.sqrt(abs(inner(param, v, v)))
    if nu == 0.0 or nv == 0.0:
        raise DegenerateAngleError("embedding angle needs points distinct from the vertex")
    return math.acosh(max(1.0, abs(inner(param, u, v)) / (nu * nv)))


def hinge_tau(
    param: CurvatureParam,
    first: float,
    second: float,
    angle: float,
    *,
    kind: HingeKind,
) -> float:
    """
    Time separation across a hinge of two geodesic segments meeting at a vertex.

    `outward`: both segments leave the vertex towards the future, with lengths `first`
    and `second`; returns tau from the nearer endpoint to the farther one, or 0 when the
    endpoints are not timelike related.
    `through`: `first` arrives at the vertex from the past and `second` leaves it towards
    the future; returns tau from the past endpoint to the future endpoint.
    """
    if min(first, second, angle) < 0.0:
        raise RangeError("hinge lengths and angle must be nonnegative")
    bend = 2.0 * math.sinh(angle / 2.0) ** 2
    if param.K == 0.0:
        if kind == "through":
            return math.sqrt((first + second) ** 2 + 2.0 * first * second * bend)
        sq = (second - first) ** 2 - 2.0 * first * second * bend
        return math.sqrt(sq) if sq > 0.0 else 0.0
    s = param.s
    r1, r2 = first / s, second / s
    if param.K > 0.0:
        if kind == "through":
            half = math.sinh((r1 + r2) / 2.0) ** 2 + math.sinh(r1) * math.sinh(r2) * bend / 2.0
        else:
            half = math.sinh((r2 - r1) / 2.0) ** 2 - math.sinh(r1) * math.sinh(r2) * bend / 2.0
        if half <= 0.0:
            return 0.0
        return 2.0 * s * math.asinh(math.sqrt(half))
    if kind == "through":
        half = math.sin((r1 + r2) / 2.0) ** 2 + math.sin(r1) * math.sin(r2) * bend / 2.0
    else:
        half = math.sin((r2 - r1) / 2.0) ** 2 - math.sin(r1) * math.sin(r2) * bend / 2.0
    if half <= 0.0:
        return 0.0
    if half >= 1.0:
        raise SizeBoundError(
            f"hinge endpoints are beyond the timelike diameter {param.diameter:.6g}"
        )
    return 2.0 * s * math.asin(math.sqrt(half))


FloatArray = npt.NDArray[np.float64]


def comparison_angle_array(
    param: CurvatureParam,
    a: FloatArray,
    b: FloatArray,
    c: FloatArray,
    vertex: Vertex,
) -> FloatArray:
    """
    Elementwise `comparison_angle` for side arrays that broadcast together.

    Inputs are not validated: callers mask out infeasible triples and zero adjacent sides.
    """
    a, b, c = np.broadcast_arrays(
        np.asarray(a, dtype=np.float64),
        np.asarray(b, dtype=np.float64),
        np.asarray(c, dtype=np.float64),
    )
    defect = c - a - b
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if param.K == 0.0:
            match vertex:
                case "y":
                    excess = defect * (c + a + b) / (2.0 * a * b)
                case "x":
                    excess = defect * (c - a + b) / (2.0 * a * c)
                case "z":
                    excess = defect * (c - b + a) / (2.0 * b * c)
        else:
            s = param.s
            f = np.sinh if param.K > 0.0 else np.sin
            sa, sb, sc, sd = a / s, b / s, c / s, defect / s
            match vertex:
                case "y":
                    excess = 2.0 * f((sc + sa + sb) / 2.0) * f(sd / 2.0) / (f(sa) * f(sb))
                case "x":
                    excess = 2.0 * f((sc - sa + sb) / 2.0) * f(sd / 2.0) / (f(sa) * f(sc))
                case "z":
                    excess = 2.0 * f((sc - sb + sa) / 2.0) * f(sd / 2.0) / (f(sb) * f(sc))
        excess = np.where(defect <= _COLLINEAR_RTOL * c, 0.0, np.maximum(excess, 0.0))
        return 2.0 * np.arcsinh(np.sqrt(excess / 2.0))


def hinge_tau_array(
    param: CurvatureParam,
    first: FloatArray,
    second: FloatArray,
    angle: FloatArray,
    *,
    kind: HingeKind,
) -> FloatArray:
    """Elementwise `hinge_tau`; entries beyond the timelike diameter are NaN."""
    first, second, angle = np.broadcast_arrays(
        np.asarray(first, dtype=np.float64),
        np.asarray(second, dtype=np.float64),
        np.asarray(angle, dtype=np.float64),
    )
    bend = 2.0 * np.sinh(angle / 2.0) ** 2
    with np.errstate(invalid="ignore", over="ignore"):
        if param.K == 0.0:
            if kind == "through":
                return np.sqrt((first + second) ** 2 + 2.0 * first * second * bend)
            sq = (second - first) ** 2 - 2.0 * first * second * bend
            return np.sqrt(np.maximum(sq, 0.0))
        s = param.s
        r1, r2 = first / s, second / s
        if param.K > 0.0:
            if kind == "through":
                half = np.sinh((r1 + r2) / 2.0) ** 2 + np.sinh(r1) * np.sinh(r2) * bend / 2.0
            else:
                half = np.sinh((r2 - r1) / 2.0) ** 2 - np.sinh(r1) * np.sinh(r2) * bend / 2.0
            return 2.0 * s * np.arcsinh(np.sqrt(np.maximum(half, 0.0)))
        if kind == "through":
            half = np.sin((r1 + r2) / 2.0) ** 2 + np.sin(r1) * np.sin(r2) * bend / 2.0
        else:
            half = np.sin((r2 - r1) / 2.0) ** 2 - np.sin(r1) * np.sin(r2) * bend / 2.0
        half = np.maximum(half, 0.0)
        out = 2.0 * s * np.arcsin(np.sqrt(np.minimum(half, 1.0)))
        return np.where(half >= 1.0, np.nan, out)
