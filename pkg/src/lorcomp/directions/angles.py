from __future__ import annotations

import functools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt

from ..config import LORCOMP_CONFIG
from ..errors import LorcompError, RangeError
from ..execution import partition, run_chunks
from ..lorspace import AmbientSpec, ambient_tau
from ..model2d import CausalClass, CurvatureParam, TriangleSides, comparison_angle
from ..runtime.logging import get_logger
from .sample import DirectionSample, _same_base, exp_map

FloatArray = npt.NDArray[np.float64]

DEFAULT_ANGLE_TOL = 1e-4


def geometric_grid(first: int = 3, last: int = 14, t0: float = 1.0) -> tuple[float, ...]:
    """t0 * 2^-k for k = last, ..., first, increasing."""
    return tuple(t0 * 2.0 ** (-k) for k in range(last, first - 1, -1))


DEFAULT_GRID = geometric_grid()


@dataclass(frozen=True, eq=False)
class AngleGrid:
    """
    Comparison angles theta(t, s) at p of the triangles (p, gamma1(t), gamma2(s)).

    Rows follow `t_grid`, columns `s_grid`, both increasing. Cells whose points are not
    timelike related hold NaN.
    """

    K: float
    t_grid: tuple[float, ...]
    s_grid: tuple[float, ...]
    theta: FloatArray
    estimate: float
    extrapolated: float | None

    @property
    def tail(self) -> FloatArray:
        """Values of the finest quarter of the valid cells, ordered by max(t, s)."""
        return _tail_values(self.theta, self.t_grid, self.s_grid)

    @property
    def valid(self) -> int:
        return int(np.count_nonzero(~np.isnan(self.theta)))


def _valid_cells(
    theta: FloatArray, t_grid: tuple[float, ...], s_grid: tuple[float, ...]
) -> list[tuple[float, int, int]]:
    rows, cols = np.nonzero(~np.isnan(theta))
    return sorted(
        (max(t_grid[i], s_grid[j]), int(i), int(j)) for i, j in zip(rows, cols, strict=True)
    )


def _tail_values(
    theta: FloatArray, t_grid: tuple[float, ...], s_grid: tuple[float, ...]
) -> FloatArray:
    cells = _valid_cells(theta, t_grid, s_grid)
    keep = cells[: max(1, math.ceil(len(cells) / 4))] if cells else []
    return np.array([theta[i, j] for _, i, j in keep])


def _cell_angle(
    spec: AmbientSpec,
    param: CurvatureParam,
    a: FloatArray,
    b: FloatArray,
    ta: float,
    tb: float,
    tol: float,
) -> float:
    """Comparison angle at p of (p, a, b) with tau(p, a) = ta and tau(p, b) = tb."""
    if np.array_equal(a, b):
        return 0.0
    try:
        result = ambient_tau(spec, a, b)
        if result.causal_class is CausalClass.TIMELIKE_FUTURE:
            sides = TriangleSides(a=ta, b=result.tau, c=tb)
        elif result.causal_class is CausalClass.TIMELIKE_PAST:
            sides = TriangleSides(a=tb, b=result.tau, c=ta)
        else:
            return math.nan
        return comparison_angle(param, sides, "x", tol=tol)
    except LorcompError:
        return math.nan


def _grid_rows(
    rows: Sequence[int],
    *,
    d1: DirectionSample,
    d2: DirectionSample,
    param: CurvatureParam,
    t_grid: tuple[float, ...],
    s_grid: tuple[float, ...],
    tol: float,
) -> list[tuple[int, list[float]]]:
    spec = d1.ambient
    second = [exp_map(spec, d2.p, s, d2) for s in s_grid]
    out = []
    for row in rows:
        t = t_grid[row]
        a = exp_map(spec, d1.p, t, d1)
        out.append(
            (row, [_cell_angle(spec, param, a, b, t, s, tol) for b, s in zip(second, s_grid, strict=True)])
        )
    return out


def comparison_grid(
    d1: DirectionSample,
    d2: DirectionSample,
    t_grid: Sequence[float] = DEFAULT_GRID,
    s_grid: Sequence[float] | None = None,
    *,
    K: float = 0.0,
    threads: int | None = None,
) -> tuple[tuple[float, ...], tuple[float, ...], FloatArray]:
    _same_base(d1, d2)
    ts = tuple(sorted(float(t) for t in t_grid))
    ss = ts if s_grid is None else tuple(sorted(float(s) for s in s_grid))
    if not ts or ts[0] <= 0.0 or not ss or ss[0] <= 0.0:
        raise RangeError("angle grids must be nonempty and positive")
    workers = LORCOMP_CONFIG.resolve_threads(threads)
    task = functools.partial(
        _grid_rows,
        d1=d1,
        d2=d2,
        param=CurvatureParam(K),
        t_grid=ts,
        s_grid=ss,
        tol=LORCOMP_CONFIG.tol,
    )
    theta = np.full((len(ts), len(ss)), math.nan)
    for part in run_chunks(task, partition(list(range(len(ts))), workers), threads=workers):
        for row, values in part:
            theta[row] = values
    return ts, ss, theta


def _richardson(theta: FloatArray, t_grid: tuple[float, ...], s_grid: tuple[float, ...]) -> float | None:
    """
    Second-order extrapolation from the two finest valid cells on one index diagonal
    (a fixed ratio s/t); the diagonal whose finest cell is finest wins.
    """
    rows, cols = theta.shape
    best: tuple[float, float] | None = None
    for offset in range(-(rows - 1), cols):
        cells = [
            (i, i + offset)
            for i in range(rows)
            if 0 <= i + offset < cols and not math.isnan(theta[i, i + offset])
        ]
        if len(cells) < 2:
            continue
        (i0, j0), (i1, j1) = cells[0], cells[1]
        size = t_grid[i0] * s_grid[j0]
        if best is not None and best[0] <= size:
            continue
        q = size / (t_grid[i1] * s_grid[j1])
        best = (size, float((theta[i0, j0] - q * theta[i1, j1]) / (1.0 - q)))
    return None if best is None else best[1]


def angle_estimate(
    d1: DirectionSample,
    d2: DirectionSample,
    t_grid: Sequence[float] = DEFAULT_GRID,
    s_grid: Sequence[float] | None = None,
    *,
    K: float = 0.0,
    tol: float = DEFAULT_ANGLE_TOL,
    threads: int | None = None,
) -> AngleGrid:
    """
    Estimate the angle between two directions at a point from comparison angles.

    The estimate is the supremum of theta over the finest quarter of the valid cells; a
    Richardson-extrapolated limit is reported next to it and a divergence beyond 10 * tol
    between the two is logged as a warning.
    """
    ts, ss, theta = comparison_grid(d1, d2, t_grid, s_grid, K=K, threads=threads)
    tail = _tail_values(theta, ts, ss)
    if tail.size == 0:
        raise RangeError(
            "no grid cell has timelike related points",
            hints=["Widen the grid so that s/t exceeds exp(angle) somewhere."],
        )
    estimate = float(tail.max())
    extrapolated = _richardson(theta, ts, ss)
    if extrapolated is not None and abs(extrapolated - estimate) > 10.0 * tol:
        get_logger().warning(
            "angle estimate %.9f and extrapolated limit %.9f differ by more than %g",
            estimate,
            extrapolated,
            10.0 * tol,
        )
    return AngleGrid(K=K, t_grid=ts, s_grid=ss, theta=theta, estimate=estimate, extrapolated=extrapolated)


@dataclass(frozen=True, slots=True)
class MonotonicityVerdict:
    side: Literal["upper", "lower"]
    passed: bool
    defect: float
    comparisons: int


def theta_monotonicity(
    d1: DirectionSample,
    d2: DirectionSample,
    t_grid: Sequence[float] = DEFAULT_GRID,
    side: Literal["upper", "lower"] = "upper",
    *,
    tol: float | None = None,
    threads: int | None = None,
) -> MonotonicityVerdict:
    """
    Monotonicity of the signed comparison angle along increasing t and s.

    Both curves are future directed, so the signed angle is -theta. An upper bound needs
    the signed angle nondecreasing, that is theta nonincreasing; a lower bound the reverse.
    De Sitter angles open up with t and s, anti-de Sitter angles close.
    The defect is the largest step in the forbidden direction between adjacent valid cells.
    """
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    _, _, theta = comparison_grid(d1, d2, t_grid, K=0.0, threads=threads)
    signed = -theta
    steps = [np.diff(signed, axis=0).ravel(), np.diff(signed, axis=1).ravel()]
    diffs = np.concatenate(steps)
    diffs = diffs[~np.isnan(diffs)]
    # upper: signed steps must be >= 0; lower: <= 0
    forbidden = -diffs if side == "upper" else diffs
    defect = float(max(0.0, forbidden.max(initial=0.0)))
    return MonotonicityVerdict(side=side, passed=defect <= tol, defect=defect, comparisons=int(diffs.size))
