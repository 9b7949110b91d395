"""
The four-point condition.

Both triangles of a glued picture share a vertex, so the compared time separation is read
off a hinge at that vertex: the two comparison angles are added when the glued points lie
on opposite sides of the common edge and subtracted when they lie on the same side. The
hinge law of cosines then gives the model value.

Model time separations grow with K, so an upper bound K holds at every K' >= K and a
lower bound at every K' <= K. Pictures, with margins that must be >= -tol:

- upper, x1 << x2 << x3 <= x4: triangles x1x2x3 and x1x2x4 glued along x1x2 on opposite
  sides; margin t34 - tau~(x3, x4)
- lower, x1 << x2 << x3 << x4, first: triangles x1x2x4 and x1x3x4 glued along x1x4 on
  opposite sides; margin t23 - tau~(x2, x3)
- lower, second: triangles x1x2x3 and x2x3x4 glued along x2x3 on the same side;
  margin tau~(x1, x4) - t14

Planar flat quadruples meet every picture with equality.
"""

from __future__ import annotations

import functools
import time
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..config import LORCOMP_CONFIG
from ..errors import CausalityError, InvalidTriangleError, SizeBoundError
from ..execution import partition, run_chunks
from ..lorspace import FiniteLorentzSpace
from ..model2d import (
    CurvatureParam,
    comparison_angle,
    comparison_angle_array,
    hinge_tau,
    hinge_tau_array,
)
from ..runtime.logging import get_logger
from .verdict import FloatArray, QuadrupleTaus, ScanReport, ScanTally, Side, Verdict, merge_tallies

_SUB_TRIPLES = ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


def _check_quadruple(q: QuadrupleTaus, tol: float) -> None:
    for triple in _SUB_TRIPLES:
        sides = q.sides(*triple)
        if min(sides.a, sides.b, sides.c) < 0.0:
            raise InvalidTriangleError(f"negative time separation in sub-triangle {triple}")
        if sides.c < sides.a + sides.b - tol * max(1.0, sides.c):
            raise InvalidTriangleError(
                f"sub-triangle x{triple[0]}x{triple[1]}x{triple[2]} violates the reverse "
                f"triangle inequality: {sides}"
            )


def _future_hinge(param: CurvatureParam, near: float, far: float, angle: float) -> float:
    """tau~ from the endpoint at `near` to the endpoint at `far` of an outward hinge."""
    if far <= near:
        return 0.0
    return hinge_tau(param, near, far, angle, kind="outward")


def four_point_upper_margins(
    param: CurvatureParam,
    q: QuadrupleTaus,
    *,
    tol: float | None = None,
) -> Verdict:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    if not (q.t12 > 0.0 and q.t23 > 0.0):
        raise CausalityError("the upper four-point condition needs x1 << x2 << x3")
    _check_quadruple(q, tol)
    try:
        alpha3 = comparison_angle(param, q.sides(1, 2, 3), "x", tol=tol)
        alpha4 = comparison_angle(param, q.sides(1, 2, 4), "x", tol=tol)
        tilde = _future_hinge(param, q.t13, q.t14, alpha3 + alpha4)
    except SizeBoundError:
        return Verdict.skipped("size-bound")
    return Verdict.from_margins([q.t34 - tilde], tol)


def four_point_lower_margin(
    param: CurvatureParam,
    q: QuadrupleTaus,
    *,
    tol: float | None = None,
) -> Verdict:
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    if not (q.t12 > 0.0 and q.t23 > 0.0 and q.t34 > 0.0):
        raise CausalityError("the lower four-point condition needs x1 << x2 << x3 << x4")
    _check_quadruple(q, tol)
    try:
        beta2 = comparison_angle(param, q.sides(1, 2, 4), "x", tol=tol)
        beta3 = comparison_angle(param, q.sides(1, 3, 4), "x", tol=tol)
        tilde1 = _future_hinge(param, q.t12, q.t13, beta2 + beta3)
        gamma1 = comparison_angle(param, q.sides(1, 2, 3), "y", tol=tol)
        gamma4 = comparison_angle(param, q.sides(2, 3, 4), "x", tol=tol)
        # Same side along x2x3: the hinge at x2 opens through the common edge.
        tilde2 = hinge_tau(param, q.t12, q.t24, gamma1 + gamma4, kind="through")
    except SizeBoundError:
        return Verdict.skipped("size-bound")
    return Verdict.from_margins([q.t23 - tilde1, tilde2 - q.t14], tol)


def four_point_margin(
    param: CurvatureParam,
    q: QuadrupleTaus,
    side: Side,
    *,
    tol: float | None = None,
) -> Verdict:
    if side == "upper":
        return four_point_upper_margins(param, q, tol=tol)
    return four_point_lower_margin(param, q, tol=tol)


def _feasible(c: FloatArray, a: FloatArray, b: FloatArray, tol: float) -> FloatArray:
    return c >= a + b - tol * np.maximum(1.0, c)


def _scan_middle_pairs(
    pairs: Sequence[tuple[int, int]],
    *,
    space: FiniteLorentzSpace,
    param: CurvatureParam,
    side: Side,
    tol: float,
    cap: int,
) -> ScanTally:
    """Evaluate every quadruple whose middle pair (x2, x3) is in `pairs`."""
    tau, causal = space.tau, space.causal
    everyone = np.arange(space.n)
    tally = ScanTally()
    for j, k in pairs:
        past = np.flatnonzero(tau[:, j] > 0.0)
        if side == "upper":
            future = np.flatnonzero(causal[k, :] & (everyone != k))
        else:
            future = np.flatnonzero(tau[k, :] > 0.0)
        if past.size == 0 or future.size == 0:
            continue
        shape = (past.size, future.size)
        t12 = np.broadcast_to(tau[past, j][:, None], shape)
        t13 = np.broadcast_to(tau[past, k][:, None], shape)
        t14 = tau[np.ix_(past, future)]
        t23 = np.full(shape, tau[j, k])
        t24 = np.broadcast_to(tau[j, future][None, :], shape)
        t34 = np.broadcast_to(tau[k, future][None, :], shape)

        feasible = (
            _feasible(t13, t12, t23, tol)
            & _feasible(t14, t12, t24, tol)
            & _feasible(t14, t13, t34, tol)
            & _feasible(t24, t23, t34, tol)
        )
        in_size = t14 < param.diameter

        if side == "upper":
            alpha3 = comparison_angle_array(param, t12, t23, t13, "x")
            alpha4 = comparison_angle_array(param, t12, t24, t14, "x")
            hinge = hinge_tau_array(param, t13, t14, alpha3 + alpha4, kind="outward")
            tilde = np.where(t14 > t13, hinge, 0.0)
            in_size &= np.isfinite(tilde)
            margins = t34 - tilde
        else:
            beta2 = comparison_angle_array(param, t12, t24, t14, "x")
            beta3 = comparison_angle_array(param, t13, t34, t14, "x")
            hinge1 = hinge_tau_array(param, t12, t13, beta2 + beta3, kind="outward")
            tilde1 = np.where(t13 > t12, hinge1, 0.0)
            gamma1 = comparison_angle_array(param, t12, t23, t13, "y")
            gamma4 = comparison_angle_array(param, t23, t34, t24, "x")
            tilde2 = hinge_tau_array(param, t12, t24, gamma1 + gamma4, kind="through")
            in_size &= np.isfinite(tilde1) & np.isfinite(tilde2)
            margins = np.minimum(t23 - tilde1, tilde2 - t14)

        tested = feasible & in_size
        tally.skip("realization-infeasible", int((~feasible).sum()))
        tally.skip("size-bound", int((feasible & ~in_size).sum()))
        rows, cols = np.nonzero(tested)
        indices = np.stack(
            [past[rows], np.full(rows.size, j), np.full(rows.size, k), future[cols]], axis=1
        )
        tally.observe_many(margins[tested], indices, tol)
        tally.prune(cap)
    return tally


def scan_four_point(
    space: FiniteLorentzSpace,
    param: CurvatureParam,
    side: Side,
    tol: float | None = None,
    *,
    threads: int | None = None,
    max_witnesses: int | None = None,
) -> ScanReport:
    """Check every quadruple of `space` matching the causal pattern of `side`."""
    tol = LORCOMP_CONFIG.resolve_scan_tol(tol)
    cap = LORCOMP_CONFIG.max_witnesses if max_witnesses is None else max_witnesses
    logger = get_logger()
    started = time.perf_counter()
    middle = [(int(j), int(k)) for j, k in np.argwhere(space.tau > 0.0)]
    workers = LORCOMP_CONFIG.resolve_threads(threads)
    task = functools.partial(
        _scan_middle_pairs,
        space=space,
        param=param,
        side=side,
        tol=tol,
        cap=cap,
    )
    tallies = run_chunks(task, partition(middle, workers * 4), threads=workers)
    tally = merge_tallies(tallies, cap)
    report = tally.report(
        check="four-point",
        K=param.K,
        side=side,
        tol=tol,
        max_witnesses=cap,
        runtime=time.perf_counter() - started,
    )
    logger.info(
        "four-point %s scan at K=%g: %d tested, %d skipped, %d violations",
        side,
        param.K,
        report.tested,
        sum(report.skipped.values()),
        report.violations,
    )
    return report


@dataclass(frozen=True, slots=True)
class KMonotonicity:
    side: Side
    entries: tuple[tuple[float, Verdict], ...]

    @property
    def passing(self) -> tuple[bool, ...]:
        return tuple(verdict.passed for _, verdict in self.entries)

    @property
    def monotone(self) -> bool:
        """Upper bounds pass on an up-set of K, lower bounds on a down-set."""
        flags = [v.passed for _, v in self.entries if v.skipped_reason is None]
        if self.side == "lower":
            flags = flags[::-1]
        return all(not a or b for a, b in zip(flags, flags[1:], strict=False))

    @property
    def threshold(self) -> float | None:
        """Smallest passing K for upper bounds, largest for lower bounds."""
        passing = [k for k, v in self.entries if v.passed and v.skipped_reason is None]
        if not passing:
            return None
        return min(passing) if self.side == "upper" else max(passing)


def k_monotonicity(
    q: QuadrupleTaus,
    side: Side,
    k_grid: Sequence[float],
    *,
    tol: float | None = None,
) -> KMonotonicity:
    """Evaluate one quadruple along an increasing grid of curvature bounds."""
    grid = sorted(k_grid)
    entries = tuple(
        (k, four_point_margin(CurvatureParam(k), q, side, tol=tol)) for k in grid
    )
    return KMonotonicity(side=side, entries=entries)
