from __future__ import annotations

import functools
import itertools
import time
from collections.abc import Sequence

import numpy as np

from ..config import LORCOMP_CONFIG
from ..errors import CausalityError, InvalidTriangleError, RangeError, SizeBoundError
from ..execution import partition, run_chunks
from ..lorspace import FiniteLorentzSpace
from ..model2d import (
    CurvatureParam,
    ModelPoint,
    TriangleSides,
    future_tau,
    geodesic_interpolate,
    realize_triangle,
)
from ..runtime.logging import get_logger
from .verdict import LevelTally, ScanReport, Side, eps_schedule

DEFAULT_EPS = (1e-1, 1e-2, 1e-3)
DEFAULT_MUS = (0.25, 0.5, 0.75)
# Allowed deviation per unit sqrt(eps) at the finest level: eps-midpoints sit O(sqrt(eps))
# off the geodesic.
DEFAULT_EPS_SLACK = 0.2


def _check_mu(mu: float) -> None:
    if not 0.0 < mu < 1.0:
        raise RangeError(f"mu must lie in (0, 1), got {mu!r}")


def find_eps_mu_midpoints(
    space: FiniteLorentzSpace, i: int, j: int, mu: float, eps: float
) -> list[int]:
    """Indices m with |tau(i,m) - mu tau(i,j)| < eps and |tau(m,j) - (1-mu) tau(i,j)| < eps."""
    _check_mu(mu)
    if not eps > 0.0:
        raise RangeError(f"eps must be positive, got {eps!r}")
    total = float(space.tau[i, j])
    if not total > 0.0:
        raise CausalityError(f"points {i} and {j} are not timelike related")
    near_i = np.abs(space.tau[i, :] - mu * total) < eps
    near_j = np.abs(space.tau[:, j] - (1.0 - mu) * total) < eps
    return [int(m) for m in np.flatnonzero(near_i & near_j)]


def _deviation(side: Side, actual: float, model: float) -> float:
    if side == "upper":
        return max(0.0, actual - model)
    return max(0.0, model - actual)


# Designated pairs of a triangle x << y << z as (first, second, third) vertex names.
_PAIRS = (("x", "y", "z"), ("y", "z", "x"), ("x", "z", "y"))


def _model_tau_both(param: CurvatureParam, p: ModelPoint, q: ModelPoint) -> tuple[float, float]:
    return future_tau(param, p, q), future_tau(param, q, p)


def _scan_triangles(
    triangles: Sequence[tuple[int, int, int]],
    *,
    space: FiniteLorentzSpace,
    param: CurvatureParam,
    side: Side,
    eps_levels: tuple[float, ...],
    mus: tuple[float, ...],
    tol: float,
    cap: int,
) -> LevelTally:
    tau = space.tau
    tally = LevelTally.empty(len(eps_levels))
    widest = eps_levels[0]
    for triangle in triangles:
        names = dict(zip("xyz", triangle, strict=True))
        sides = TriangleSides(
            a=float(tau[names["x"], names["y"]]),
            b=float(tau[names["y"], names["z"]]),
            c=float(tau[names["x"], names["z"]]),
        )
        try:
            model = realize_triangle(param, sides, tol=tol)
        except InvalidTriangleError:
            tally.skipped["realization-infeasible"] += 1
            continue
        except SizeBoundError:
            tally.skipped["size-bound"] += 1
            continue
        tally.tested += 1
        for first, second, third in _PAIRS:
            i, j, c = names[first], names[second], names[third]
            total = float(tau[i, j])
            for mu in mus:
                candidates = [
                    m
                    for m in find_eps_mu_midpoints(space, i, j, mu, widest)
                    if tau[c, m] > 0.0 or tau[m, c] > 0.0
                ]
                if not candidates:
                    continue
                m_bar = geodesic_interpolate(
                    param, model.vertex(first), model.vertex(second), mu * total, tol=tol
                )
                after, before = _model_tau_both(param, model.vertex(third), m_bar)
                for m in candidates:
                    offset = max(
                        abs(float(tau[i, m]) - mu * total),
                        abs(float(tau[m, j]) - (1.0 - mu) * total),
                    )
                    if tau[c, m] > 0.0:
                        deviation = _deviation(side, float(tau[c, m]), after)
                    else:
                        deviation = _deviation(side, float(tau[m, c]), before)
                    tally.record(eps_levels, offset, deviation, (i, m, j, c), tol)
        if len(tally.witnesses) > cap:
            tally.prune(cap)
    return tally


def eps_mu_condition_scan(
    space: FiniteLorentzSpace,
    param: CurvatureParam,
    side: Side,
    eps_list: Sequence[float] = DEFAULT_EPS,
    mu_list: Sequence[float] = DEFAULT_MUS,
    *,
    tol: float | None = None,
    eps_slack: float = DEFAULT_EPS_SLACK,
    threads: int | None = None,
    max_witnesses: int | None = None,
) -> ScanReport:
    """
    One-sided epsilon-mu triangle condition on every timelike triangle of `space`.

    For each designated pair, each mu and each eps-mu midpoint m timelike related to the
    third vertex c, tau between c and m is compared with the model value at the exact
    mu-point of the comparison triangle. The upper side records max(0, actual - model),
    the lower side max(0, model - actual); g(eps) is the worst record at level eps.
    The check passes when g at the finest level is at most tol + eps_slack * sqrt(eps).
    Witness indices are (i, m, j, c).
    """
    tol = LORCOMP_CONFIG.resolve_scan_tol(tol)
    cap = LORCOMP_CONFIG.max_witnesses if max_witnesses is None else max_witnesses
    eps_levels = eps_schedule(eps_list)
    mus = tuple(float(mu) for mu in mu_list)
    for mu in mus:
        _check_mu(mu)
    started = time.perf_counter()
    timelike = space.tau > 0.0
    triangles = [
        (i, j, k)
        for i, j, k in itertools.product(range(space.n), repeat=3)
        if timelike[i, j] and timelike[j, k]
    ]
    workers = LORCOMP_CONFIG.resolve_threads(threads)
    task = functools.partial(
        _scan_triangles,
        space=space,
        param=param,
        side=side,
        eps_levels=eps_levels,
        mus=mus,
        tol=tol,
        cap=cap,
    )
    total = LevelTally.empty(len(eps_levels))
    for part in run_chunks(task, partition(triangles, workers * 4), threads=workers):
        total = total.merge(part)

    report = total.report(
        check="eps-mu",
        K=param.K,
        side=side,
        eps_levels=eps_levels,
        tol=tol,
        eps_slack=eps_slack,
        max_witnesses=cap,
        runtime=time.perf_counter() - started,
    )
    get_logger().info(
        "eps-mu %s scan at K=%g: %d triangles, g(%g)=%.3e",
        side,
        param.K,
        total.tested,
        eps_levels[-1],
        total.worst[-1],
    )
    return report
