from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import Executor, Future, ProcessPoolExecutor, ThreadPoolExecutor
from typing import TypeVar

from ..config import LORCOMP_CONFIG, ExecutorKind
from ..errors import LorcompError, LorcompExecutionError

T = TypeVar("T")
R = TypeVar("R")


def partition(items: Sequence[T], parts: int) -> list[Sequence[T]]:
    """Split `items` into at most `parts` contiguous, nonempty chunks."""
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if not items:
        return []
    parts = min(parts, len(items))
    size, extra = divmod(len(items), parts)
    chunks: list[Sequence[T]] = []
    start = 0
    for index in range(parts):
        stop = start + size + (1 if index < extra else 0)
        chunks.append(items[start:stop])
        start = stop
    return chunks


def _make_executor(kind: ExecutorKind, workers: int) -> Executor:
    if kind == "process":
        return ProcessPoolExecutor(max_workers=workers)
    return ThreadPoolExecutor(max_workers=workers)


def run_chunks(
    task: Callable[[T], R],
    chunks: Sequence[T],
    *,
    threads: int | None = None,
    executor: ExecutorKind | None = None,
) -> list[R]:
    """
    Evaluate `task` on every chunk and return the results in chunk order.

    A single worker runs inline. Library errors from a worker propagate unchanged;
    anything else is wrapped in `LorcompExecutionError`. With the process executor,
    `task` must be picklable (a module-level function or a `functools.partial` of one).
    """
    workers = LORCOMP_CONFIG.resolve_threads(threads)
    if workers == 1 or len(chunks) <= 1:
        return [task(chunk) for chunk in chunks]

    kind = executor or LORCOMP_CONFIG.executor
    with _make_executor(kind, min(workers, len(chunks))) as pool:
        futures: list[Future[R]] = [pool.submit(task, chunk) for chunk in chunks]
        results: list[R] = []
        for index, future in enumerate(futures):
            try:
                results.append(future.result())
            except LorcompError:
                raise
            except Exception as exc:
                raise LorcompExecutionError(
                    f"{kind} worker failed on chunk {index} of {len(chunks)}",
                    original_error=exc,
                    hints=["Run with --threads 1 to reproduce the failure inline."],
                ) from exc
        return results
