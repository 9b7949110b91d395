from __future__ import annotations

import time
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from ..config import LORCOMP_CONFIG
from ..errors import CausalityError, RangeError, SizeBoundError
from ..lorspace import AmbientSpec, ambient_geodesic, ambient_tau
from ..model2d import (
    CausalClass,
    CurvatureParam,
    TriangleSides,
    Vertex,
    future_tau,
    geodesic_interpolate,
    realize_triangle,
)
from ..runtime.logging import get_logger
from .verdict import ScanReport, ScanTally, Side

# (from, to, opposite) for the three realizers of x << y << z.
_REALIZERS: tuple[tuple[Vertex, Vertex, Vertex], ...] = (
    ("x", "y", "z"),
    ("y", "z", "x"),
    ("x", "z", "y"),
)


def _timelike_tau(spec: AmbientSpec, p: npt.ArrayLike, q: npt.ArrayLike) -> float:
    result = ambient_tau(spec, p, q)
    if result.causal_class is not CausalClass.TIMELIKE_FUTURE:
        raise CausalityError(f"vertices must be timelike ordered, got {result.causal_class.value}")
    return result.tau


def _ambient_future_tau(spec: AmbientSpec, p: npt.ArrayLike, q: npt.ArrayLike) -> float:
    result = ambient_tau(spec, p, q)
    return result.tau if result.causal_class is CausalClass.TIMELIKE_FUTURE else 0.0


def triangle_condition_check(
    spec: AmbientSpec,
    vertices: Sequence[npt.ArrayLike],
    param: CurvatureParam,
    side: Side,
    samples_per_side: int = 16,
    *,
    tol: float | None = None,
) -> ScanReport:
    """
    One-sided triangle comparison on an analytic triangle x << y << z.

    Points m are sampled in the interior of each realizer, the comparison point sits at
    the same offset on the comparison triangle, and tau between m and the opposite vertex
    is compared in both time orders. Upper bounds need tau <= model + tol, lower bounds
    tau >= model - tol. Witness indices are (realizer, sample).
    """
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    if samples_per_side < 1:
        raise RangeError(f"samples_per_side must be >= 1, got {samples_per_side}")
    started = time.perf_counter()
    points = {name: np.asarray(p, dtype=np.float64) for name, p in zip("xyz", vertices, strict=True)}
    sides = TriangleSides(
        a=_timelike_tau(spec, points["x"], points["y"]),
        b=_timelike_tau(spec, points["y"], points["z"]),
        c=_timelike_tau(spec, points["x"], points["z"]),
    )
    tally = ScanTally()
    try:
        model = realize_triangle(param, sides, tol=tol)
    except SizeBoundError:
        tally.skip("size-bound", 2 * samples_per_side * len(_REALIZERS))
        return tally.report(check="triangle", K=param.K, side=side, tol=tol)

    for index, (start, end, opposite) in enumerate(_REALIZERS):
        length = getattr(sides, "abc"[index])
        for k in range(1, samples_per_side + 1):
            u = length * k / (samples_per_side + 1)
            m = ambient_geodesic(spec, points[start], points[end], u)
            m_bar = geodesic_interpolate(param, model.vertex(start), model.vertex(end), u, tol=tol)
            o, o_bar = points[opposite], model.vertex(opposite)
            pairs = (
                (_ambient_future_tau(spec, o, m), future_tau(param, o_bar, m_bar)),
                (_ambient_future_tau(spec, m, o), future_tau(param, m_bar, o_bar)),
            )
            for actual, expected in pairs:
                margin = expected - actual if side == "upper" else actual - expected
                tally.observe(margin, (index, k), tol)

    report = tally.report(
        check="triangle",
        K=param.K,
        side=side,
        tol=tol,
        details={"a": sides.a, "b": sides.b, "c": sides.c},
        runtime=time.perf_counter() - started,
    )
    get_logger().debug(
        "triangle check (%s, K=%g): worst margin %.3e", side, param.K, report.worst_margin or 0.0
    )
    return report
