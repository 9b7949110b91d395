"""
Constructive epsilon-midpoints in the space of directions.

Pick t and s where the comparison angle of (p, gamma1(t), gamma2(s)) is within eps of the
angle, walk the realizer from a = gamma1(t) to c = gamma2(s) until the comparison angles
on both sides of b agree, and take the direction of the geodesic from p to b.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ..config import LORCOMP_CONFIG
from ..errors import NumericalError, RangeError
from ..lorspace import ambient_geodesic, ambient_tau
from ..model2d import CausalClass, CurvatureParam, TriangleSides, comparison_angle
from ..runtime.logging import get_logger
from .angles import DEFAULT_GRID, angle_estimate
from .sample import SAME_DIRECTION_ANGLE, DirectionSample, direction_angle, exp_map, log_map

MAX_ITERATIONS = 200


@dataclass(frozen=True, eq=False)
class DirectionMidpoint:
    direction: DirectionSample
    omega: float
    first: float
    second: float
    t: float
    s: float
    iterations: int


def _pick_cell(
    theta: np.ndarray, t_grid: tuple[float, ...], s_grid: tuple[float, ...], omega: float, eps: float
) -> tuple[float, float]:
    """The finest cell (by t * s) whose comparison angle is within eps / 8 of omega."""
    best: tuple[float, float, float] | None = None
    rows, cols = np.nonzero(np.abs(theta - omega) < eps / 8.0)
    for i, j in zip(rows, cols, strict=True):
        size = t_grid[i] * s_grid[j]
        if best is None or size < best[0]:
            best = (size, t_grid[i], s_grid[j])
    if best is None:
        raise NumericalError(
            f"no grid cell has a comparison angle within {eps / 8.0:g} of {omega:.9f}",
            diagnostics={"omega": omega, "eps": eps},
        )
    return best[1], best[2]


def direction_midpoint(
    d1: DirectionSample,
    d2: DirectionSample,
    eps: float,
    grid: Sequence[float] = DEFAULT_GRID,
) -> DirectionMidpoint:
    """
    A direction m with |angle(d1, m) - omega/2| <= eps and |angle(m, d2) - omega/2| <= eps.

    The equal-angle point on the realizer is found with brentq; the reported angles are
    the smooth angles between the directions.
    """
    if not eps > 0.0:
        raise RangeError(f"eps must be positive, got {eps!r}")
    estimate = angle_estimate(d1, d2, grid)
    omega = estimate.estimate
    if omega <= SAME_DIRECTION_ANGLE:
        return DirectionMidpoint(d1, omega, 0.0, 0.0, 0.0, 0.0, 0)

    spec, p = d1.ambient, d1.p
    t, s = _pick_cell(estimate.theta, estimate.t_grid, estimate.s_grid, omega, eps)
    a, c = exp_map(spec, p, t, d1), exp_map(spec, p, s, d2)
    ta, tc = t, s
    ac = ambient_tau(spec, a, c)
    if ac.causal_class is CausalClass.TIMELIKE_PAST:
        a, c, ta, tc = c, a, tc, ta
    elif ac.causal_class is not CausalClass.TIMELIKE_FUTURE:
        raise NumericalError(
            "the chosen grid points are not timelike related",
            diagnostics={"t": t, "s": s, "omega": omega},
        )
    length = ac.tau
    flat = CurvatureParam(0.0)
    tol = LORCOMP_CONFIG.tol
    full = comparison_angle(flat, TriangleSides(ta, length, tc), "x", tol=tol)
    calls = 0

    def gap(u: float) -> float:
        nonlocal calls
        calls += 1
        if u <= 0.0:
            return -full
        if u >= length:
            return full
        b = ambient_geodesic(spec, a, c, u)
        pb = ambient_tau(spec, p, b).tau
        left = comparison_angle(flat, TriangleSides(ta, u, pb), "x", tol=tol)
        right = comparison_angle(flat, TriangleSides(pb, length - u, tc), "x", tol=tol)
        return left - right

    try:
        root, info = brentq(gap, 0.0, length, xtol=1e-15, maxiter=MAX_ITERATIONS, full_output=True)
    except (ValueError, RuntimeError) as exc:
        raise NumericalError(
            f"equal-angle search failed: {exc}",
            diagnostics={"t": t, "s": s, "omega": omega, "calls": calls},
        ) from exc
    residual = abs(gap(root))
    if residual > eps / 4.0:
        raise NumericalError(
            f"equal-angle gap {residual:.3e} exceeds eps/4",
            diagnostics={"t": t, "s": s, "omega": omega, "iterations": info.iterations},
        )
    _, m = log_map(spec, p, ambient_geodesic(spec, a, c, root))
    first, second = direction_angle(d1, m), direction_angle(m, d2)
    get_logger().debug(
        "direction midpoint at t=%g, s=%g: angles %.9f, %.9f (omega %.9f)", t, s, first, second, omega
    )
    return DirectionMidpoint(m, omega, first, second, t, s, int(info.iterations))


@dataclass(frozen=True, eq=False)
class CauchyDecay:
    """Midpoints for eps_k = 2^-k and the constant C in angle(m_k, m_l) <= C 2^-min(k, l)."""

    ks: tuple[int, ...]
    midpoints: tuple[DirectionMidpoint, ...]
    gaps: tuple[float, ...]
    constant: float
    rate: float | None


def midpoint_cauchy_sequence(
    d1: DirectionSample,
    d2: DirectionSample,
    ks: Sequence[int] = tuple(range(1, 11)),
    grid: Sequence[float] = DEFAULT_GRID,
) -> CauchyDecay:
    order = tuple(sorted(ks))
    midpoints = tuple(direction_midpoint(d1, d2, 2.0 ** (-k), grid) for k in order)
    constant = 0.0
    for (k, mk), (l, ml) in _pairs(order, midpoints):
        distance = direction_angle(mk.direction, ml.direction)
        constant = max(constant, distance * 2.0 ** min(k, l))
    gaps = tuple(
        direction_angle(a.direction, b.direction) for a, b in zip(midpoints, midpoints[1:], strict=False)
    )
    positive = [(k, g) for k, g in zip(order, gaps, strict=False) if g > 0.0]
    rate = None
    if len(positive) >= 2:
        xs = np.array([k for k, _ in positive], dtype=np.float64)
        ys = np.log(np.array([g for _, g in positive]))
        slope, _ = np.polyfit(xs, ys, 1)
        rate = float(math.exp(slope))
    return CauchyDecay(order, midpoints, gaps, constant, rate)


def _pairs(
    ks: tuple[int, ...], midpoints: tuple[DirectionMidpoint, ...]
) -> list[tuple[tuple[int, DirectionMidpoint], tuple[int, DirectionMidpoint]]]:
    items = list(zip(ks, midpoints, strict=True))
    return [(items[i], items[j]) for i in range(len(items)) for j in range(i + 1, len(items))]
