import logging

import lorcomp
from lorcomp.runtime import attach_log_file, format_traceback
from lorcomp.runtime.logging import (
    _LorcompNamespaceFilter,
    _LorcompRichConsoleHandler,
    _location,
)


def _record(name: str, *, lineno: int = 1, msg: str = "hello") -> logging.LogRecord:
    return logging.LogRecord(
        name=name,
        level=logging.INFO,
        pathname=__file__,
        lineno=lineno,
        msg=msg,
        args=(),
        exc_info=None,
    )


def test_configure_logging_rich_handler_is_idempotent() -> None:
    root = logging.getLogger()

    lorcomp.configure_logging()
    after = sum(isinstance(h, _LorcompRichConsoleHandler) for h in root.handlers)
    lorcomp.configure_logging()
    after2 = sum(isinstance(h, _LorcompRichConsoleHandler) for h in root.handlers)

    assert after == 1
    assert after2 == after


def test_namespace_filter_passes_only_lorcomp_records() -> None:
    keep = _LorcompNamespaceFilter()

    assert keep.filter(_record("lorcomp"))
    assert keep.filter(_record("lorcomp.curvcheck"))
    assert not keep.filter(_record("lorcompanion"))
    assert not keep.filter(_record("numpy"))


def test_location_is_file_and_line() -> None:
    assert _location(_record("lorcomp", lineno=123)) == "test_logger.py:123"


def test_get_logger_returns_namespace_children() -> None:
    assert lorcomp.get_logger().name == "lorcomp"
    assert lorcomp.get_logger("scan").name == "lorcomp.scan"


def test_attach_log_file_mirrors_records(tmp_path) -> None:
    path = tmp_path / "logs" / "lorcomp.log"
    handler = attach_log_file(path)
    try:
        lorcomp.get_logger().debug("four-point scan finished")
        logging.getLogger("elsewhere").warning("not ours")
        handler.flush()
    finally:
        logging.getLogger().removeHandler(handler)
        handler.close()

    text = path.read_text()
    assert "[DEBUG] lorcomp" in text
    assert "four-point scan finished" in text
    assert "not ours" not in text


def test_log_attributes_caller_outside_package(tmp_path) -> None:
    path = tmp_path / "caller.log"
    handler = attach_log_file(path)
    try:
        lorcomp.log("from the test", level="warning")
        handler.flush()
    finally:
        logging.getLogger().removeHandler(handler)
        handler.close()

    text = path.read_text()
    assert "[WARNING]" in text
    assert "test_logger.py:" in text


def test_format_traceback_is_plain_text() -> None:
    try:
        raise lorcomp.RangeError("eps must be positive")
    except lorcomp.RangeError as exc:
        text = format_traceback(exc)

    assert "RangeError" in text
    assert "eps must be positive" in text
