import threading

import pytest

import lorcomp
from lorcomp.execution import partition, run_chunks


def _total(chunk) -> int:
    return sum(chunk)


def test_partition_is_contiguous_and_balanced() -> None:
    chunks = partition(list(range(10)), 3)

    assert [list(c) for c in chunks] == [[0, 1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert partition([], 4) == []
    assert [list(c) for c in partition([1, 2], 5)] == [[1], [2]]
    with pytest.raises(ValueError, match="parts must be >= 1"):
        partition([1], 0)


def test_run_chunks_keeps_chunk_order() -> None:
    chunks = partition(list(range(100)), 7)

    results = run_chunks(_total, chunks, threads=4)

    assert results == [sum(c) for c in chunks]
    assert sum(results) == sum(range(100))


def test_single_worker_runs_inline() -> None:
    seen: list[str] = []

    def task(chunk) -> int:
        seen.append(threading.current_thread().name)
        return len(chunk)

    assert run_chunks(task, [[1], [2, 3]], threads=1) == [1, 2]
    assert set(seen) == {threading.current_thread().name}


def test_library_errors_pass_through() -> None:
    def task(chunk) -> int:
        raise lorcomp.CausalityError(f"chunk {chunk[0]} is not timelike")

    with pytest.raises(lorcomp.CausalityError, match="is not timelike"):
        run_chunks(task, [[1], [2]], threads=2)


def test_foreign_errors_are_wrapped() -> None:
    def task(chunk) -> int:
        raise ZeroDivisionError("boom")

    with pytest.raises(lorcomp.LorcompExecutionError, match="worker failed on chunk 0") as info:
        run_chunks(task, [[1], [2]], threads=2)
    assert isinstance(info.value.original_error, ZeroDivisionError)
    assert "--threads 1" in str(info.value)
