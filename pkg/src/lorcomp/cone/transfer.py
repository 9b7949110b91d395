"""
From the cone back to its base.

A timelike pair x2 = (r2, y2) << x3 = (r3, y3) of Con(Y) has a mu-midpoint above the base
midpoint of y2 and y3: its radius is r_m and mu = r2 / (r2 + r3). Moving the base
midpoint by eps moves the two midpoint defects by eps_coefficient * eps to first order.
"""

from __future__ import annotations

import functools
import itertools
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..config import LORCOMP_CONFIG
from ..curvcheck import (
    DEFAULT_EPS_SLACK,
    LevelTally,
    ScanReport,
    eps_schedule,
)
from ..errors import CausalityError, InvalidMetricTriangleError, RangeError
from ..execution import partition, run_chunks
from ..model2d import h2_distance, h2_midpoint, realize_h2_triangle
from ..runtime.logging import get_logger
from .base import FiniteMetricSpace
from .cone import ConePoint, cone_tau

FloatArray = npt.NDArray[np.float64]

DEFAULT_BASE_EPS = (1e-2, 1e-3, 1e-4)
DEFAULT_TRANSFER_EPS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True, slots=True)
class TransferQuantities:
    mu: float
    r_m: float
    eps_coefficient: float
    tau23: float


def transfer_quantities(r2: float, r3: float, d23: float) -> TransferQuantities:
    if not (r2 > 0.0 and r3 > 0.0):
        raise RangeError(f"radii must be positive, got r2={r2!r}, r3={r3!r}")
    if not d23 >= 0.0:
        raise RangeError(f"base distance must be nonnegative, got {d23!r}")
    value = (r3 - r2) ** 2 - 4.0 * r2 * r3 * math.sinh(d23 / 2.0) ** 2
    if not value > 0.0:
        raise CausalityError(
            f"cone points with radii {r2}, {r3} at base distance {d23} are not timelike related"
        )
    tau23 = math.sqrt(value)
    return TransferQuantities(
        mu=r2 / (r2 + r3),
        r_m=2.0 * r2 * r3 * math.cosh(d23 / 2.0) / (r2 + r3),
        eps_coefficient=r2 * r3 * math.sinh(d23) / tau23,
        tau23=tau23,
    )


def midpoint_defects(
    r2: float, r3: float, d23: float, shift2: float = 0.0, shift3: float = 0.0
) -> tuple[float, float]:
    """
    Defects |tau(x2, x_m) - mu tau23| and |tau(x_m, x3) - (1 - mu) tau23| when the base
    midpoint sits at distances d23/2 + shift2 from y2 and d23/2 + shift3 from y3.
    """
    if r2 > r3:
        r2, r3, shift2, shift3 = r3, r2, shift3, shift2
    q = transfer_quantities(r2, r3, d23)
    x2, xm, x3 = ConePoint(r2, 0), ConePoint(q.r_m, 1), ConePoint(r3, 2)
    first = cone_tau(x2, xm, d23 / 2.0 + shift2).tau
    second = cone_tau(xm, x3, d23 / 2.0 + shift3).tau
    return abs(first - q.mu * q.tau23), abs(second - (1.0 - q.mu) * q.tau23)


@dataclass(frozen=True, slots=True)
class TransferFit:
    """Worst midpoint defect per eps and the fit defect = slope * eps + quadratic * eps^2."""

    eps: tuple[float, ...]
    defects: tuple[float, ...]
    slope: float
    quadratic: float
    coefficient: float

    @property
    def relative_error(self) -> float:
        return abs(self.slope - self.coefficient) / self.coefficient


def transfer_slope_fit(
    r2: float, r3: float, d23: float, eps_list: Sequence[float] = DEFAULT_TRANSFER_EPS
) -> TransferFit:
    """Measure the first-order law of the midpoint defects under base shifts of size eps."""
    q = transfer_quantities(r2, r3, d23)
    eps = tuple(sorted(eps_schedule(eps_list)))
    if q.eps_coefficient == 0.0:
        raise RangeError("the first-order law is degenerate at zero base distance")
    defects = []
    for e in eps:
        worst = 0.0
        for s2, s3 in itertools.product((-e, e), repeat=2):
            if s2 + s3 < 0.0:
                # d(y2, m) + d(m, y3) >= d23 in any metric space.
                continue
            worst = max(worst, *midpoint_defects(r2, r3, d23, s2, s3))
        defects.append(worst)
    design = np.stack([np.array(eps), np.array(eps) ** 2], axis=1)
    (slope, quadratic), *_ = np.linalg.lstsq(design, np.array(defects), rcond=None)
    fit = TransferFit(
        eps=eps,
        defects=tuple(defects),
        slope=float(slope),
        quadratic=float(quadratic),
        coefficient=q.eps_coefficient,
    )
    get_logger().debug(
        "transfer fit (r2=%g, r3=%g, d=%g): slope %.6f vs %.6f",
        r2,
        r3,
        d23,
        fit.slope,
        fit.coefficient,
    )
    return fit


def _comparison_medians(
    d23: float, d12: FloatArray, d13: FloatArray, tol: float
) -> FloatArray:
    """
    Distance from y1~ to the midpoint of y2~ y3~ in the H^2 comparison triangle of each
    (d12, d13); NaN where no comparison triangle exists.
    """
    medians = np.full(d12.shape, np.nan)
    for index, (a, b) in enumerate(zip(d12.tolist(), d13.tolist(), strict=True)):
        try:
            y2, y3, y1 = realize_h2_triangle(d23, a, b, tol=tol)
        except InvalidMetricTriangleError:
            continue
        medians[index] = h2_distance(y1, h2_midpoint(y2, y3))
    return medians


def _scan_base_pairs(
    pairs: Sequence[tuple[int, int]],
    *,
    dY: FloatArray,
    eps_levels: tuple[float, ...],
    tol: float,
    cap: int,
) -> LevelTally:
    n = dY.shape[0]
    tally = LevelTally.empty(len(eps_levels))
    widest = eps_levels[0]
    everyone = np.arange(n)
    for j, k in pairs:
        half = float(dY[j, k]) / 2.0
        offsets = np.maximum(np.abs(dY[j, :] - half), np.abs(dY[:, k] - half))
        candidates = np.flatnonzero((offsets < widest) & (everyone != j) & (everyone != k))
        if candidates.size == 0:
            continue
        others = np.flatnonzero((everyone != j) & (everyone != k))
        median = _comparison_medians(float(dY[j, k]), dY[others, j], dY[others, k], tol)
        feasible = np.isfinite(median)
        infeasible = int((~feasible).sum())
        if not feasible.any():
            tally.skipped["realization-infeasible"] += infeasible * candidates.size
            continue
        for m in candidates:
            tally.skipped["realization-infeasible"] += infeasible
            tally.tested += int(feasible.sum())
            excess = np.where(feasible, np.maximum(dY[others, m] - median, 0.0), 0.0)
            worst = int(np.argmax(excess))
            tally.record(
                eps_levels,
                float(offsets[m]),
                float(excess[worst]),
                (int(others[worst]), j, k, int(m)),
                tol,
            )
        if len(tally.witnesses) > cap:
            tally.prune(cap)
    return tally


def base_curvature_minus1_check(
    base: FiniteMetricSpace,
    eps_list: Sequence[float] = DEFAULT_BASE_EPS,
    tol: float | None = None,
    *,
    eps_slack: float = DEFAULT_EPS_SLACK,
    threads: int | None = None,
    max_witnesses: int | None = None,
) -> ScanReport:
    """
    Midpoint comparison of the base against H^2.

    For every pair (y2, y3), every eps-midpoint m of the pair found in the base and every
    other point y1, the excess max(0, d(y1, m) - d(y1~, m~)) over the exact midpoint m~ of
    the hyperbolic comparison triangle is recorded at each eps level it meets. Passing
    follows the eps-mu rule: worst excess at the finest eps at most
    tol + eps_slack * sqrt(eps).
    Witness indices are (y1, y2, y3, m).
    """
    tol = LORCOMP_CONFIG.resolve_scan_tol(tol)
    cap = LORCOMP_CONFIG.max_witnesses if max_witnesses is None else max_witnesses
    eps_levels = eps_schedule(eps_list)
    started = time.perf_counter()
    pairs = [(j, k) for j, k in itertools.combinations(range(base.n), 2) if base.dY[j, k] > 0.0]
    workers = LORCOMP_CONFIG.resolve_threads(threads)
    task = functools.partial(
        _scan_base_pairs, dY=base.dY, eps_levels=eps_levels, tol=tol, cap=cap
    )
    total = LevelTally.empty(len(eps_levels))
    for part in run_chunks(task, partition(pairs, workers * 4), threads=workers):
        total = total.merge(part)
    report = total.report(
        check="base-minus1",
        K=-1.0,
        side="upper",
        eps_levels=eps_levels,
        tol=tol,
        eps_slack=eps_slack,
        max_witnesses=cap,
        runtime=time.perf_counter() - started,
    )
    get_logger().info(
        "base curvature check on %d points: %d configurations, excess(%g)=%.3e",
        base.n,
        total.tested,
        eps_levels[-1],
        total.worst[-1],
    )
    return report
