"""
Chronology thresholds and tangent-cone blow-ups at a point of an analytic ambient.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from ..config import LORCOMP_CONFIG
from ..cone import ConePoint, cone_tau
from ..curvcheck import QuadrupleTaus, Verdict, four_point_upper_margins
from ..errors import NumericalError, RangeError
from ..execution import partition, run_chunks
from ..lorspace import AmbientSpec, ambient_inner, ambient_tau
from ..model2d import CausalClass, CurvatureParam
from ..runtime.logging import get_logger
from .angles import DEFAULT_GRID, angle_estimate
from .sample import DirectionSample, _same_base, direction_angle, exp_map

FloatArray = npt.NDArray[np.float64]

AngleSource = Literal["oracle", "estimate"]


def _check_mu(mu: float) -> None:
    if not 0.0 < mu < 1.0:
        raise RangeError(f"mu must lie in (0, 1), got {mu!r}")


def chronology_threshold(d1: DirectionSample, d2: DirectionSample, mu: float, t: float) -> bool:
    """Whether exp(mu t, d1) << exp(t, d2)."""
    _same_base(d1, d2)
    _check_mu(mu)
    spec = d1.ambient
    x = exp_map(spec, d1.p, mu * t, d1)
    y = exp_map(spec, d2.p, t, d2)
    return ambient_tau(spec, x, y).causal_class is CausalClass.TIMELIKE_FUTURE


def threshold_flip_point(d1: DirectionSample, d2: DirectionSample, t: float) -> float:
    """
    The mu in (0, 1) where exp(mu t, d1) stops preceding exp(t, d2).

    The search runs on the ambient chord g(y - x, y - x), which is positive exactly on
    timelike pairs of every supported ambient; in flat space the root is exp(-angle).
    """
    _same_base(d1, d2)
    if not t > 0.0:
        raise RangeError(f"t must be positive, got {t!r}")
    spec = d1.ambient
    y = exp_map(spec, d2.p, t, d2)

    def chord(mu: float) -> float:
        w = y - exp_map(spec, d1.p, mu * t, d1)
        return ambient_inner(spec, w, w)

    start, end = chord(0.0), chord(1.0)
    if not (start > 0.0 and end < 0.0):
        raise NumericalError(
            "the chronology threshold is not bracketed by mu in [0, 1]",
            diagnostics={"t": t, "chord(0)": start, "chord(1)": end},
            hints=["Equal directions never lose chronology; pick distinct directions."],
        )
    root = brentq(chord, 0.0, 1.0, xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    get_logger().debug("chronology flip at mu=%.12f for t=%g", root, t)
    return float(root)


@dataclass(frozen=True, slots=True)
class BlowupItem:
    r: float
    direction: DirectionSample


@dataclass(frozen=True, eq=False)
class BlowupTable:
    """
    Rescaled time separations lambda^-1 tau(a_i, a_j) with a_i = exp(lambda r_i, d_i).

    `values[k]` is the matrix for `lambdas[k]`; `reference` holds the cone values over the
    direction angles; `errors[k]` is the worst deviation from the reference at lambdas[k].
    """

    lambdas: tuple[float, ...]
    radii: tuple[float, ...]
    angles: FloatArray
    values: FloatArray
    reference: FloatArray
    errors: tuple[float, ...]
    limit: FloatArray | None
    chain: tuple[int, int, int, int] | None
    margins: Verdict | None

    @property
    def finest_error(self) -> float:
        return self.errors[-1]

    def pair_errors(self) -> FloatArray:
        """Per-pair deviation at the finest lambda."""
        return np.abs(self.values[-1] - self.reference)


def lambda_schedule(first: int = 3, last: int = 12) -> tuple[float, ...]:
    """2^-k for k = first, ..., last, decreasing."""
    if first > last:
        raise RangeError(f"empty lambda schedule 2^-{first}..2^-{last}")
    return tuple(2.0 ** (-k) for k in range(first, last + 1))


def _check_items(items: Sequence[BlowupItem]) -> None:
    if len(items) < 2:
        raise RangeError("a blow-up table needs at least two items")
    for item in items:
        if not (math.isfinite(item.r) and item.r > 0.0):
            raise RangeError(f"item radii must be positive and finite, got {item.r!r}")
        _same_base(items[0].direction, item.direction)


def _angle_matrix(items: Sequence[BlowupItem], source: AngleSource, grid: Sequence[float]) -> FloatArray:
    n = len(items)
    angles = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        d1, d2 = items[i].direction, items[j].direction
        value = direction_angle(d1, d2) if source == "oracle" else angle_estimate(d1, d2, grid).estimate
        angles[i, j] = angles[j, i] = value
    return angles


def _reference(radii: Sequence[float], angles: FloatArray) -> FloatArray:
    n = len(radii)
    ref = np.zeros((n, n))
    for i, j in itertools.permutations(range(n), 2):
        ref[i, j] = cone_tau(ConePoint(radii[i], i), ConePoint(radii[j], j), float(angles[i, j])).tau
    return ref


def _scaled_rows(
    indices: Sequence[int],
    *,
    spec: AmbientSpec,
    p: FloatArray,
    items: Sequence[BlowupItem],
    lambdas: tuple[float, ...],
) -> list[tuple[int, FloatArray]]:
    n = len(items)
    out = []
    for k in indices:
        lam = lambdas[k]
        points = [exp_map(spec, p, lam * item.r, item.direction) for item in items]
        block = np.zeros((n, n))
        for i, j in itertools.permutations(range(n), 2):
            result = ambient_tau(spec, points[i], points[j])
            if result.causal_class is CausalClass.TIMELIKE_FUTURE:
                block[i, j] = result.tau / lam
        out.append((k, block))
    return out


def _limit(values: FloatArray, lambdas: tuple[float, ...]) -> FloatArray | None:
    """Second-order Richardson limit from the two finest lambdas."""
    if len(lambdas) < 2:
        return None
    q2 = (lambdas[-1] / lambdas[-2]) ** 2
    return (values[-1] - q2 * values[-2]) / (1.0 - q2)


def _cone_chain(reference: FloatArray) -> tuple[int, int, int, int] | None:
    """First ordering of four items that is a timelike chain in the cone."""
    n = reference.shape[0]
    if n != 4:
        return None
    for order in itertools.permutations(range(n)):
        if all(reference[order[k], order[k + 1]] > 0.0 for k in range(3)):
            return (order[0], order[1], order[2], order[3])
    return None


def blowup_table(
    p: npt.ArrayLike,
    items: Sequence[BlowupItem],
    lambdas: Sequence[float],
    *,
    angles: AngleSource = "oracle",
    grid: Sequence[float] = DEFAULT_GRID,
    threads: int | None = None,
) -> BlowupTable:
    """
    Fill the rescaled tau table at p and compare it with the tangent cone.

    With `angles="oracle"` the cone reference uses the smooth angles between the item
    directions; `"estimate"` uses comparison-angle estimates instead, which leaves an
    error floor of the estimator's accuracy.
    """
    _check_items(items)
    point = np.asarray(p, dtype=np.float64)
    spec = items[0].direction.ambient
    if not np.allclose(items[0].direction.p, point, rtol=0.0, atol=1e-12):
        raise RangeError("item directions must start at p")
    lams = tuple(float(lam) for lam in lambdas)
    if not lams or any(not (math.isfinite(lam) and lam > 0.0) for lam in lams):
        raise RangeError("lambdas must be a nonempty list of positive numbers")
    lams = tuple(sorted(lams, reverse=True))

    radii = tuple(item.r for item in items)
    angle_matrix = _angle_matrix(items, angles, grid)
    reference = _reference(radii, angle_matrix)

    workers = LORCOMP_CONFIG.resolve_threads(threads)
    task = functools.partial(_scaled_rows, spec=spec, p=point, items=items, lambdas=lams)
    values = np.zeros((len(lams), len(items), len(items)))
    for part in run_chunks(task, partition(list(range(len(lams))), workers), threads=workers):
        for k, block in part:
            values[k] = block
    errors = tuple(float(np.max(np.abs(values[k] - reference))) for k in range(len(lams)))

    chain = _cone_chain(reference)
    margins = None
    if chain is not None:
        i, j, k, l = chain
        taus = QuadrupleTaus(
            t12=float(reference[i, j]),
            t13=float(reference[i, k]),
            t14=float(reference[i, l]),
            t23=float(reference[j, k]),
            t24=float(reference[j, l]),
            t34=float(reference[k, l]),
        )
        margins = four_point_upper_margins(
            CurvatureParam(0.0), taus, tol=LORCOMP_CONFIG.scan_tol
        )

    get_logger().info(
        "blow-up at %s over %d lambdas: error %.3e at lambda=%g",
        spec.kind,
        len(lams),
        errors[-1],
        lams[-1],
    )
    return BlowupTable(
        lambdas=lams,
        radii=radii,
        angles=angle_matrix,
        values=values,
        reference=reference,
        errors=errors,
        limit=_limit(values, lams),
        chain=chain,
        margins=margins,
    )
