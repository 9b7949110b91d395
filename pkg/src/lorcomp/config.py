import os
from typing import Literal, cast


ExecutorKind = Literal["thread", "process"]


class LorcompConfig:
    """Central configuration for lorcomp numerics and execution."""

    DEFAULT_TOL = 1e-9
    DEFAULT_SCAN_TOL = 1e-7
    DEFAULT_MAX_WITNESSES = 20

    def __init__(self):
        self.tol = self._parse_positive_float(
            "LORCOMP_TOL", os.getenv("LORCOMP_TOL", str(self.DEFAULT_TOL))
        )
        self.scan_tol = self._parse_positive_float(
            "LORCOMP_SCAN_TOL",
            os.getenv("LORCOMP_SCAN_TOL", str(self.DEFAULT_SCAN_TOL)),
        )
        threads_env = os.getenv("LORCOMP_THREADS")
        self.thread_cap = (
            self._parse_threads(threads_env) if threads_env is not None else None
        )
        self.threads = self.thread_cap or min(8, os.cpu_count() or 1)
        self.executor = self._parse_executor(os.getenv("LORCOMP_EXECUTOR", "thread"))
        self.max_witnesses = self._parse_threads(
            os.getenv("LORCOMP_MAX_WITNESSES", str(self.DEFAULT_MAX_WITNESSES)),
            name="LORCOMP_MAX_WITNESSES",
        )
        self.rich_tracebacks = self._parse_bool(
            os.getenv("LORCOMP_RICH_TRACEBACKS", "1")
        )

    @staticmethod
    def _parse_bool(value: str) -> bool:
        return value.strip().lower() in {"1", "true", "yes"}

    @staticmethod
    def _parse_positive_float(name: str, value: str) -> float:
        try:
            parsed = float(value)
        except ValueError:
            raise ValueError(f"{name} must be a number, got {value!r}") from None
        if not parsed > 0.0:
            raise ValueError(f"{name} must be positive, got {value!r}")
        return parsed

    @classmethod
    def _parse_threads(cls, value: str, *, name: str = "LORCOMP_THREADS") -> int:
        try:
            parsed = int(value.strip())
        except ValueError:
            raise ValueError(f"{name} must be a positive integer, got {value!r}") from None
        if parsed < 1:
            raise ValueError(f"{name} must be >= 1, got {parsed}")
        return parsed

    @classmethod
    def _parse_executor(cls, value: str) -> ExecutorKind:
        normalized = value.strip().lower()
        if normalized not in {"thread", "process"}:
            raise ValueError("LORCOMP_EXECUTOR must be one of 'thread' or 'process'")
        return cast(ExecutorKind, normalized)

    def resolve_tol(self, tol: float | None) -> float:
        return self.tol if tol is None else tol

    def resolve_scan_tol(self, tol: float | None) -> float:
        return self.scan_tol if tol is None else tol

    def resolve_threads(self, threads: int | None) -> int:
        if threads is None:
            return self.threads
        if threads < 1:
            raise ValueError("threads must be >= 1")
        if self.thread_cap is not None:
            return min(threads, self.thread_cap)
        return threads


LORCOMP_CONFIG = LorcompConfig()


def get_tol() -> float:
    return LORCOMP_CONFIG.tol


def set_tol(tol: float) -> None:
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    LORCOMP_CONFIG.tol = tol


def get_threads() -> int:
    return LORCOMP_CONFIG.threads


def set_threads(threads: int) -> None:
    if threads < 1:
        raise ValueError("threads must be >= 1")
    LORCOMP_CONFIG.threads = threads


def reload_config() -> LorcompConfig:
    """Re-read the environment into the shared config, e.g. after loading a `.env` file."""
    LORCOMP_CONFIG.__dict__.update(LorcompConfig().__dict__)
    return LORCOMP_CONFIG
