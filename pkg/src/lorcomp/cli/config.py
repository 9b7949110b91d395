"""
Run configuration for the command line and the small parsers behind its flags.

Every command builds a `RunConfig` before doing any work, so a bad flag fails with a usage
error and no file is written.
"""

from __future__ import annotations

import math
import re
from pathlib import Path
from typing import get_args

import chz

from ..curvcheck import Side
from ..errors import RangeError
from ..lorspace import AmbientSpec

_POWER = re.compile(r"^\s*2\^(-?\d+)\s*$")


@chz.chz(typecheck=True)
class RunConfig:
    command: str
    space: Path | None = None
    out: Path | None = None
    report: Path | None = None
    ambient: str | None = None
    scale: float = 1.0
    K: float = 0.0
    side: str = "upper"
    tol: float | None = None
    seed: int | None = None
    threads: int | None = None
    max_witnesses: int | None = None
    eps: tuple[float, ...] = ()
    mus: tuple[float, ...] = ()
    lambdas: tuple[float, ...] = ()
    record_runtime: bool = False

    @chz.validate
    def _check_numbers(self) -> None:
        if self.side not in get_args(Side):
            raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}")
        if not math.isfinite(self.K):
            raise ValueError(f"K must be finite, got {self.K!r}")
        if not (math.isfinite(self.scale) and self.scale > 0.0):
            raise ValueError(f"scale must be positive, got {self.scale!r}")
        if self.tol is not None and not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.threads is not None and self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.max_witnesses is not None and self.max_witnesses < 0:
            raise ValueError(f"max witnesses must be >= 0, got {self.max_witnesses}")
        if any(not (math.isfinite(e) and e > 0.0) for e in self.eps):
            raise ValueError("eps values must be positive")
        if any(not 0.0 < mu < 1.0 for mu in self.mus):
            raise ValueError("mu values must lie in (0, 1)")
        if any(not (math.isfinite(lam) and lam > 0.0) for lam in self.lambdas):
            raise ValueError("lambda values must be positive")

    @chz.validate
    def _check_ambient(self) -> None:
        if self.ambient is not None:
            AmbientSpec.parse(self.ambient, self.scale)

    def ambient_spec(self) -> AmbientSpec:
        if self.ambient is None:
            raise RangeError(f"{self.command} needs --ambient")
        return AmbientSpec.parse(self.ambient, self.scale)


def parse_floats(text: str, *, name: str) -> tuple[float, ...]:
    """`1e-2,1e-3` -> (0.01, 0.001)."""
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"{name} must be comma separated numbers, got {text!r}") from None
    if not values:
        raise ValueError(f"{name} is empty")
    return values


def parse_powers(text: str, *, name: str = "lambda") -> tuple[float, ...]:
    """
    `2^-3..2^-12` is every power of two between the two ends; anything else is read as a
    comma separated list.
    """
    if ".." not in text:
        return parse_floats(text, name=name)
    first, _, last = text.partition("..")
    ends = [_POWER.match(first), _POWER.match(last)]
    if ends[0] is None or ends[1] is None:
        raise ValueError(f"{name} ranges look like 2^-3..2^-12, got {text!r}")
    lo, hi = int(ends[0].group(1)), int(ends[1].group(1))
    step = 1 if hi >= lo else -1
    return tuple(2.0**k for k in range(lo, hi + step, step))


def parse_range(text: str, *, name: str = "radii") -> tuple[float, ...]:
    """`0.5:2.0:0.25` is 0.5, 0.75, ..., 2.0 inclusive; a comma list is accepted too."""
    if ":" not in text:
        return parse_floats(text, name=name)
    try:
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise ValueError(f"{name} ranges look like start:stop:step, got {text!r}") from None
    if not step > 0.0 or stop < start:
        raise ValueError(f"{name} range {text!r} is empty")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(round(start + k * step, 12) for k in range(count))


def parse_rows(text: str, *, name: str = "vertices") -> list[list[float]]:
    """`0,0;1,0.2;2,0` -> one coordinate row per semicolon separated entry."""
    rows = [parse_floats(part, name=name) for part in text.split(";") if part.strip()]
    if len({len(row) for row in rows}) > 1:
        raise ValueError(f"{name} rows must have equal length")
    return [list(row) for row in rows]
