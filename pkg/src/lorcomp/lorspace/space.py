from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, computed_field

from ..config import LORCOMP_CONFIG
from ..errors import StructuralError
from .ambient import AmbientSpec

FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]

AxiomName = Literal[
    "d-nonnegative",
    "d-symmetric",
    "d-zero-diagonal",
    "d-triangle",
    "tau-nonnegative",
    "tau-zero-diagonal",
    "timelike-implies-causal",
    "causal-reflexive",
    "causal-transitive",
    "chronology",
    "reverse-triangle",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteLorentzSpace:
    """
    A finite Lorentzian pre-length space given by its matrices.

    `d` is background metric data only; the curvature checkers read `tau` and `causal`.
    Arrays are copied and made read-only on construction.
    """

    d: FloatArray
    tau: FloatArray
    causal: BoolArray
    ambient: AmbientSpec | None = None
    coords: FloatArray | None = None

    def __post_init__(self) -> None:
        d = np.asarray(self.d, dtype=np.float64)
        tau = np.asarray(self.tau, dtype=np.float64)
        causal = np.asarray(self.causal).astype(bool)
        n = d.shape[0] if d.ndim >= 1 else -1
        for name, arr in (("d", d), ("tau", tau), ("causal", causal)):
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise StructuralError(f"matrix {name!r} must be square, got shape {arr.shape}")
            if arr.shape[0] != n:
                raise StructuralError(
                    f"matrix {name!r} has size {arr.shape[0]}, expected {n}"
                )
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(tau))):
            raise StructuralError("matrices 'd' and 'tau' must be finite")
        object.__setattr__(self, "d", _frozen(d))
        object.__setattr__(self, "tau", _frozen(tau))
        object.__setattr__(self, "causal", _frozen(causal))
        if self.coords is not None:
            coords = np.asarray(self.coords, dtype=np.float64)
            if coords.ndim != 2 or coords.shape[0] != n:
                raise StructuralError(
                    f"coords must have one row per point, got shape {coords.shape} for n={n}"
                )
            object.__setattr__(self, "coords", _frozen(coords))

    @property
    def n(self) -> int:
        return int(self.tau.shape[0])

    @property
    def timelike(self) -> BoolArray:
        return self.tau > 0.0

    def same_as(self, other: FiniteLorentzSpace) -> bool:
        """Bit-exact equality of all matrices."""
        coords_equal = (self.coords is None and other.coords is None) or (
            self.coords is not None
            and other.coords is not None
            and np.array_equal(self.coords, other.coords)
        )
        return (
            np.array_equal(self.d, other.d)
            and np.array_equal(self.tau, other.tau)
            and np.array_equal(self.causal, other.causal)
            and self.ambient == other.ambient
            and coords_equal
        )

    @classmethod
    def empty(cls) -> FiniteLorentzSpace:
        return cls(np.zeros((0, 0)), np.zeros((0, 0)), np.zeros((0, 0), dtype=bool))


class AxiomViolation(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    axiom: AxiomName
    witness: list[int]
    magnitude: float
    count: int


class AxiomReport(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    n: int
    tol: float
    violations: list[AxiomViolation]
    not_applicable: list[str] = ["lower-semicontinuity"]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.violations

    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]


class _Collector:
    def __init__(self) -> None:
        self.violations: list[AxiomViolation] = []

    def pairwise(self, axiom: AxiomName, excess: FloatArray, mask: BoolArray) -> None:
        """Record the worst (i, j) with `mask` set and positive `excess`."""
        bad = mask & (excess > 0.0)
        count = int(bad.sum())
        if count == 0:
            return
        scored = np.where(bad, excess, -np.inf)
        i, j = np.unravel_index(int(np.argmax(scored)), scored.shape)
        self.violations.append(
            AxiomViolation(
                axiom=axiom,
                witness=[int(i), int(j)],
                magnitude=float(excess[i, j]),
                count=count,
            )
        )

    def triples(
        self, axiom: AxiomName, worst: tuple[float, tuple[int, int, int]] | None, count: int
    ) -> None:
        if worst is None or count == 0:
            return
        magnitude, (i, j, k) = worst
        self.violations.append(
            AxiomViolation(axiom=axiom, witness=[i, j, k], magnitude=magnitude, count=count)
        )


def _scan_triples(
    excess_through: Callable[[int], FloatArray], n: int
) -> tuple[tuple[float, tuple[int, int, int]] | None, int]:
    """Loop over the middle index j; `excess_through(j)` returns an (i, k) excess matrix."""
    worst: tuple[float, tuple[int, int, int]] | None = None
    count = 0
    for j in range(n):
        excess = excess_through(j)
        positive = excess > 0.0
        hits = int(positive.sum())
        if hits == 0:
            continue
        count += hits
        i, k = np.unravel_index(int(np.argmax(excess)), excess.shape)
        value = float(excess[i, k])
        if worst is None or value > worst[0]:
            worst = (value, (int(i), j, int(k)))
    return worst, count


def validate_axioms(space: FiniteLorentzSpace, tol: float | None = None) -> AxiomReport:
    """
    Check the finite pre-length space axioms and report the worst witness of each violation.

    Lower semicontinuity of tau has no finite analogue and is listed as not applicable.
    """
    tol = LORCOMP_CONFIG.resolve_tol(tol)
    d, tau, causal = space.d, space.tau, space.causal
    n = space.n
    off_diag = ~np.eye(n, dtype=bool)
    everywhere = np.ones((n, n), dtype=bool)
    out = _Collector()

    out.pairwise("d-nonnegative", -d - tol, everywhere)
    out.pairwise("d-symmetric", np.abs(d - d.T) - tol, off_diag)
    out.pairwise("d-zero-diagonal", np.abs(d) - tol, ~off_diag)

    def triangle_excess(j: int) -> FloatArray:
        return d - (d[:, [j]] + d[[j], :]) - tol * np.maximum(1.0, d)

    worst, count = _scan_triples(triangle_excess, n)
    out.triples("d-triangle", worst, count)

    out.pairwise("tau-nonnegative", -tau - tol, everywhere)
    out.pairwise("tau-zero-diagonal", np.abs(tau) - tol, ~off_diag)
    out.pairwise("timelike-implies-causal", tau, (tau > 0.0) & ~causal)
    out.pairwise("causal-reflexive", np.ones((n, n)), ~off_diag & ~causal)

    causal_int = causal.astype(np.int64)

    def transitive_excess(j: int) -> FloatArray:
        through = np.outer(causal_int[:, j], causal_int[j, :]).astype(bool)
        return np.where(through & ~causal, 1.0, 0.0)

    worst, count = _scan_triples(transitive_excess, n)
    out.triples("causal-transitive", worst, count)

    out.pairwise("chronology", np.minimum(tau, tau.T), off_diag & (tau > 0.0) & (tau.T > 0.0))

    def reverse_excess(j: int) -> FloatArray:
        through = np.outer(causal_int[:, j], causal_int[j, :]).astype(bool)
        excess = tau[:, [j]] + tau[[j], :] - tau
        return np.where(through, excess - tol * np.maximum(1.0, tau), -np.inf)

    worst, count = _scan_triples(reverse_excess, n)
    if worst is not None:
        # Report the raw deficit, not the tolerance-adjusted one.
        i, j, k = worst[1]
        worst = (float(tau[i, j] + tau[j, k] - tau[i, k]), worst[1])
    out.triples("reverse-triangle", worst, count)

    return AxiomReport(n=n, tol=tol, violations=out.violations)


@dataclass(frozen=True, slots=True)
class SpaceSummary:
    n: int
    causal_pairs: int
    timelike_pairs: int
    ambient: str | None

    def line(self) -> str:
        ambient = self.ambient or "hand-authored"
        return (
            f"n={self.n} causal_pairs={self.causal_pairs} "
            f"timelike_pairs={self.timelike_pairs} ambient={ambient}"
        )


def space_summary(space: FiniteLorentzSpace) -> SpaceSummary:
    off_diag = ~np.eye(space.n, dtype=bool)
    return SpaceSummary(
        n=space.n,
        causal_pairs=int((space.causal & off_diag).sum()),
        timelike_pairs=int((space.tau > 0.0).sum()),
        ambient=space.ambient.kind if space.ambient is not None else None,
    )
