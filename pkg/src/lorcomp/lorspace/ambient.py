"""
Analytic ambient spacetimes with closed-form time separation and geodesics.

Point coordinates per kind:

- `minkowski-2`: (t, x)
- `minkowski-3`: (t, x, y)
- `desitter-2`, `antidesitter-2`: ambient coordinates on the quadric, as in `model2d`

Curved kinds are also addressed by intrinsic coordinates (T, x): T is proper time along
the central geodesic and x is proper length along the initial spatial slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, cast, get_args

import numpy as np
import numpy.typing as npt

from ..errors import CausalityError, RangeError, SizeBoundError
from ..model2d import (
    CausalClass,
    CurvatureParam,
    ModelPoint,
    TauResult,
    geodesic_interpolate,
    tau_model,
)

AmbientKind = Literal["minkowski-2", "minkowski-3", "desitter-2", "antidesitter-2"]
FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class AmbientSpec:
    kind: AmbientKind
    s: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in get_args(AmbientKind):
            raise RangeError(
                f"unknown ambient kind {self.kind!r}",
                hints=[f"Use one of: {', '.join(get_args(AmbientKind))}."],
            )
        if not self.s > 0.0 or not math.isfinite(self.s):
            raise RangeError(f"ambient scale must be positive and finite, got {self.s!r}")

    @classmethod
    def parse(cls, tag: str, s: float | None = None) -> AmbientSpec:
        """Accept the full kind or the short names `minkowski`, `desitter`, `antidesitter`."""
        aliases = {
            "minkowski": "minkowski-2",
            "desitter": "desitter-2",
            "ds": "desitter-2",
            "antidesitter": "antidesitter-2",
            "ads": "antidesitter-2",
        }
        kind = aliases.get(tag.strip().lower(), tag.strip().lower())
        return cls(cast(AmbientKind, kind), 1.0 if s is None else s)

    @property
    def is_flat(self) -> bool:
        return self.kind.startswith("minkowski")

    @property
    def dim(self) -> int:
        """Number of coordinates of a point."""
        return 2 if self.kind == "minkowski-2" else 3

    @property
    def curvature(self) -> float:
        match self.kind:
            case "desitter-2":
                return 1.0 / (self.s * self.s)
            case "antidesitter-2":
                return -1.0 / (self.s * self.s)
            case _:
                return 0.0

    @property
    def param(self) -> CurvatureParam:
        return CurvatureParam(self.curvature)

    @property
    def metric(self) -> FloatArray:
        """Diagonal of the ambient bilinear form, timelike directions positive."""
        match self.kind:
            case "minkowski-2":
                return np.array([1.0, -1.0])
            case "antidesitter-2":
                return np.array([1.0, 1.0, -1.0])
            case _:
                return np.array([1.0, -1.0, -1.0])


def _as_point(spec: AmbientSpec, p: npt.ArrayLike) -> FloatArray:
    arr = np.asarray(p, dtype=np.float64)
    if arr.shape != (spec.dim,):
        raise RangeError(f"{spec.kind} points have {spec.dim} coordinates, got shape {arr.shape}")
    return arr


def _model_point(spec: AmbientSpec, p: FloatArray) -> ModelPoint:
    if spec.kind == "minkowski-2":
        return ModelPoint.flat(float(p[0]), float(p[1]))
    return ModelPoint((float(p[0]), float(p[1]), float(p[2])))


def ambient_inner(spec: AmbientSpec, u: npt.ArrayLike, v: npt.ArrayLike) -> float:
    return float(np.sum(spec.metric * np.asarray(u, dtype=np.float64) * np.asarray(v, dtype=np.float64)))


def ambient_tau(spec: AmbientSpec, p: npt.ArrayLike, q: npt.ArrayLike) -> TauResult:
    pa, qa = _as_point(spec, p), _as_point(spec, q)
    if spec.kind != "minkowski-3":
        return tau_model(spec.param, _model_point(spec, pa), _model_point(spec, qa))
    d = qa - pa
    chord2 = ambient_inner(spec, d, d)
    if chord2 > 0.0:
        causal = CausalClass.TIMELIKE_FUTURE if d[0] > 0.0 else CausalClass.TIMELIKE_PAST
        return TauResult(math.sqrt(chord2), causal)
    if chord2 == 0.0:
        return TauResult(0.0, CausalClass.NULL)
    return TauResult(0.0, CausalClass.SPACELIKE)


def ambient_geodesic(
    spec: AmbientSpec, p: npt.ArrayLike, q: npt.ArrayLike, u: float
) -> FloatArray:
    """Point at time separation `u` from `p` on the geodesic towards `q`."""
    pa, qa = _as_point(spec, p), _as_point(spec, q)
    if spec.kind != "minkowski-3":
        m = geodesic_interpolate(spec.param, _model_point(spec, pa), _model_point(spec, qa), u)
        return np.array(m.coords[: spec.dim])
    result = ambient_tau(spec, pa, qa)
    if result.causal_class is not CausalClass.TIMELIKE_FUTURE:
        raise CausalityError(f"geodesic needs p << q, got {result.causal_class.value}")
    if u < 0.0 or u > result.tau * (1.0 + 1e-12):
        raise RangeError(f"u={u!r} is outside [0, {result.tau!r}]")
    if u == 0.0:
        return pa
    return pa + (min(u, result.tau) / result.tau) * (qa - pa)


def from_intrinsic(spec: AmbientSpec, coords: npt.ArrayLike) -> FloatArray:
    """Map intrinsic (T, x) or (t, x, y) rows to ambient coordinates."""
    arr = np.atleast_2d(np.asarray(coords, dtype=np.float64))
    s = spec.s
    match spec.kind:
        case "minkowski-2" | "minkowski-3":
            out = arr.copy()
        case "desitter-2":
            T, phi = arr[:, 0] / s, arr[:, 1] / s
            out = np.stack(
                [s * np.sinh(T), s * np.cosh(T) * np.cos(phi), s * np.cosh(T) * np.sin(phi)],
                axis=1,
            )
        case "antidesitter-2":
            T, rho = arr[:, 0] / s, arr[:, 1] / s
            out = np.stack(
                [s * np.cosh(rho) * np.cos(T), s * np.cosh(rho) * np.sin(T), s * np.sinh(rho)],
                axis=1,
            )
    return out


def tau_matrix(spec: AmbientSpec, points: FloatArray) -> tuple[FloatArray, npt.NDArray[np.bool_]]:
    """
    Exact time separations tau[i, j] = tau(p_i, p_j) and the causal relation for a point set.

    Null pairs are classified by strict inequality, so only the diagonal is causal without
    being timelike.
    """
    n = points.shape[0]
    diff = points[None, :, :] - points[:, None, :]
    chord2 = np.einsum("ijk,k,ijk->ij", diff, spec.metric, diff)
    if spec.kind == "antidesitter-2":
        order = np.outer(points[:, 0], points[:, 1]) - np.outer(points[:, 1], points[:, 0])
    else:
        order = diff[:, :, 0]
    timelike = (chord2 > 0.0) & (order > 0.0)
    chord = np.sqrt(np.where(timelike, chord2, 0.0))
    s = spec.s
    match spec.kind:
        case "desitter-2":
            tau = 2.0 * s * np.arcsinh(chord / (2.0 * s))
        case "antidesitter-2":
            half = chord / (2.0 * s)
            if np.any(half >= 1.0):
                raise SizeBoundError(
                    "anti-de Sitter pair reaches the timelike diameter",
                    hints=["Keep the time extent of the region below pi*s."],
                )
            tau = 2.0 * s * np.arcsin(half)
        case _:
            tau = chord
    causal = timelike | np.eye(n, dtype=bool)
    return tau, causal
