from __future__ import annotations

import math
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from ..config import LORCOMP_CONFIG
from ..errors import RangeError
from ..lorspace import FiniteLorentzSpace
from ..model2d import TriangleSides

Side = Literal["upper", "lower"]
SkipReason = Literal["size-bound", "realization-infeasible"]

SCHEMA_VERSION = 1

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True, slots=True)
class QuadrupleTaus:
    """Time separations among x1 << x2 << x3 (<= or <<) x4."""

    t12: float
    t13: float
    t14: float
    t23: float
    t24: float
    t34: float

    @classmethod
    def from_space(
        cls, space: FiniteLorentzSpace, i: int, j: int, k: int, l: int
    ) -> QuadrupleTaus:
        tau = space.tau
        return cls(
            t12=float(tau[i, j]),
            t13=float(tau[i, k]),
            t14=float(tau[i, l]),
            t23=float(tau[j, k]),
            t24=float(tau[j, l]),
            t34=float(tau[k, l]),
        )

    @classmethod
    def chain(cls, times: Sequence[float]) -> QuadrupleTaus:
        """Four points on one timelike geodesic at the given proper times."""
        t1, t2, t3, t4 = times
        return cls(t2 - t1, t3 - t1, t4 - t1, t3 - t2, t4 - t2, t4 - t3)

    def sides(self, first: int, second: int, third: int) -> TriangleSides:
        """Side triple of the sub-triangle on the 1-based points first << second << third."""
        taus = {
            (1, 2): self.t12,
            (1, 3): self.t13,
            (1, 4): self.t14,
            (2, 3): self.t23,
            (2, 4): self.t24,
            (3, 4): self.t34,
        }
        return TriangleSides(
            a=taus[(first, second)], b=taus[(second, third)], c=taus[(first, third)]
        )


@dataclass(frozen=True, slots=True)
class Verdict:
    margins: tuple[float, ...]
    passed: bool
    skipped_reason: SkipReason | None = None

    @classmethod
    def from_margins(cls, margins: Iterable[float], tol: float) -> Verdict:
        values = tuple(float(m) for m in margins)
        return cls(margins=values, passed=all(m >= -tol for m in values))

    @classmethod
    def skipped(cls, reason: SkipReason) -> Verdict:
        return cls(margins=(), passed=True, skipped_reason=reason)

    @property
    def worst(self) -> float | None:
        return min(self.margins) if self.margins else None


class Witness(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    indices: list[int]
    margin: float


class EpsLevel(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    eps: float
    deviation: float
    samples: int


class ScanReport(BaseModel):
    """Outcome of one check; field order is the serialized order."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schemaVersion")
    check: str
    K: float
    side: Side | None = None
    tol: float
    seed: int | None = None
    enumerated: int
    tested: int
    skipped: dict[str, int]
    violations: int
    passed: bool
    worst_margin: float | None = None
    best_margin: float | None = None
    witnesses: list[Witness]
    table: list[EpsLevel] | None = None
    details: dict[str, float] = Field(default_factory=dict)
    runtime: float | None = None


@dataclass
class ScanTally:
    """Mergeable partial result of a scan over one chunk of configurations."""

    enumerated: int = 0
    tested: int = 0
    skipped: Counter[str] = field(default_factory=Counter)
    violations: int = 0
    worst_margin: float | None = None
    best_margin: float | None = None
    witnesses: list[tuple[float, tuple[int, ...]]] = field(default_factory=list)

    def skip(self, reason: SkipReason, count: int = 1) -> None:
        self.enumerated += count
        if count:
            self.skipped[reason] += count

    def observe(self, margin: float, indices: tuple[int, ...], tol: float) -> None:
        self.enumerated += 1
        self.tested += 1
        if self.worst_margin is None or margin < self.worst_margin:
            self.worst_margin = margin
        if self.best_margin is None or margin > self.best_margin:
            self.best_margin = margin
        if margin < -tol:
            self.violations += 1
            self.witnesses.append((margin, indices))

    def observe_many(self, margins: FloatArray, indices: IntArray, tol: float) -> None:
        """Vectorized `observe`: `indices` has one row of point indices per margin."""
        if margins.size == 0:
            return
        self.enumerated += int(margins.size)
        self.tested += int(margins.size)
        self.worst_margin = _pick(min, self.worst_margin, float(margins.min()))
        self.best_margin = _pick(max, self.best_margin, float(margins.max()))
        bad = margins < -tol
        count = int(bad.sum())
        if count:
            self.violations += count
            self.witnesses.extend(
                (margin, tuple(row))
                for margin, row in zip(margins[bad].tolist(), indices[bad].tolist(), strict=True)
            )

    def prune(self, cap: int) -> None:
        self.witnesses.sort()
        del self.witnesses[cap:]

    def merge(self, other: ScanTally) -> ScanTally:
        merged = ScanTally(
            enumerated=self.enumerated + other.enumerated,
            tested=self.tested + other.tested,
            skipped=self.skipped + other.skipped,
            violations=self.violations + other.violations,
            worst_margin=_pick(min, self.worst_margin, other.worst_margin),
            best_margin=_pick(max, self.best_margin, other.best_margin),
            witnesses=self.witnesses + other.witnesses,
        )
        return merged

    def report(
        self,
        *,
        check: str,
        K: float,
        side: Side | None,
        tol: float,
        max_witnesses: int | None = None,
        passed: bool | None = None,
        **extra: object,
    ) -> ScanReport:
        cap = LORCOMP_CONFIG.max_witnesses if max_witnesses is None else max_witnesses
        self.prune(cap)
        return ScanReport(
            check=check,
            K=K,
            side=side,
            tol=tol,
            enumerated=self.enumerated,
            tested=self.tested,
            skipped={reason: self.skipped[reason] for reason in sorted(self.skipped)},
            violations=self.violations,
            passed=self.violations == 0 if passed is None else passed,
            worst_margin=self.worst_margin,
            best_margin=self.best_margin,
            witnesses=[
                Witness(indices=list(indices), margin=margin)
                for margin, indices in self.witnesses
            ],
            **extra,  # type: ignore[arg-type]
        )


def _pick(
    fn: Callable[[float, float], float], a: float | None, b: float | None
) -> float | None:
    if a is None:
        return b
    if b is None:
        return a
    return fn(a, b)


def merge_tallies(tallies: Iterable[ScanTally], cap: int | None = None) -> ScanTally:
    total = ScanTally()
    for tally in tallies:
        total = total.merge(tally)
        if cap is not None:
            total.prune(cap)
    return total


def eps_schedule(eps_list: Iterable[float]) -> tuple[float, ...]:
    """Normalize an epsilon schedule to strictly positive values, coarsest first."""
    levels = tuple(sorted((float(e) for e in eps_list), reverse=True))
    if not levels or not all(e > 0.0 and math.isfinite(e) for e in levels):
        raise RangeError("eps schedule must be a nonempty list of positive numbers")
    return levels


def fit_log_slope(eps_levels: Sequence[float], worst: Sequence[float]) -> float | None:
    """Least-squares slope of log g against log eps over the levels with g > 0."""
    points = [(math.log(e), math.log(g)) for e, g in zip(eps_levels, worst, strict=True) if g > 0.0]
    if len(points) < 2:
        return None
    xs, ys = zip(*points, strict=True)
    slope, _ = np.polyfit(np.array(xs), np.array(ys), 1)
    return float(slope)


@dataclass
class LevelTally:
    """Worst deviation per epsilon level, mergeable across chunks."""

    worst: list[float]
    samples: list[int]
    witnesses: list[tuple[float, tuple[int, ...]]] = field(default_factory=list)
    tested: int = 0
    skipped: Counter[str] = field(default_factory=Counter)

    @classmethod
    def empty(cls, levels: int) -> LevelTally:
        return cls(worst=[0.0] * levels, samples=[0] * levels)

    def record(
        self,
        eps_levels: Sequence[float],
        offset: float,
        deviation: float,
        indices: tuple[int, ...],
        tol: float,
    ) -> None:
        """Count a sample lying `offset` away from the exact midpoint at every level it meets."""
        for level, eps in enumerate(eps_levels):
            if offset < eps:
                self.samples[level] += 1
                self.worst[level] = max(self.worst[level], deviation)
        if deviation > tol and offset < eps_levels[-1]:
            self.witnesses.append((-deviation, indices))

    def prune(self, cap: int) -> None:
        self.witnesses.sort()
        del self.witnesses[cap:]

    def merge(self, other: LevelTally) -> LevelTally:
        return LevelTally(
            worst=[max(a, b) for a, b in zip(self.worst, other.worst, strict=True)],
            samples=[a + b for a, b in zip(self.samples, other.samples, strict=True)],
            witnesses=self.witnesses + other.witnesses,
            tested=self.tested + other.tested,
            skipped=self.skipped + other.skipped,
        )

    def report(
        self,
        *,
        check: str,
        K: float,
        side: Side | None,
        eps_levels: Sequence[float],
        tol: float,
        eps_slack: float,
        max_witnesses: int,
        **extra: object,
    ) -> ScanReport:
        """
        Pass when the worst deviation at the finest level is at most tol + eps_slack * sqrt(eps).

        Coarser levels, the fitted log-log slope and the largest g(eps)/sqrt(eps) ratio are
        reported but do not decide.
        """
        finest = eps_levels[-1]
        passed = self.worst[-1] <= tol + eps_slack * math.sqrt(finest)
        tally = ScanTally(
            enumerated=self.tested + sum(self.skipped.values()),
            tested=self.tested,
            skipped=Counter({k: v for k, v in self.skipped.items() if v}),
            violations=0 if passed else max(1, len(self.witnesses)),
            witnesses=self.witnesses,
        )
        details: dict[str, float] = {"eps_slack": eps_slack}
        slope = fit_log_slope(eps_levels, self.worst)
        if slope is not None:
            details["slope"] = slope
        details["coefficient"] = max(
            g / math.sqrt(e) for e, g in zip(eps_levels, self.worst, strict=True)
        )
        return tally.report(
            check=check,
            K=K,
            side=side,
            tol=tol,
            max_witnesses=max_witnesses,
            passed=passed,
            table=[
                EpsLevel(eps=e, deviation=g, samples=s)
                for e, g, s in zip(eps_levels, self.worst, self.samples, strict=True)
            ],
            details=details,
            **extra,
        )
