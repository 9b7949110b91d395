import datetime
import logging
import os
import sys
import threading
from pathlib import Path

from rich.text import Text

_LORCOMP_CONSOLE_LOCK = threading.Lock()
_LOGGER_NAME = "lorcomp"


def _in_namespace(record: logging.LogRecord) -> bool:
    return record.name == _LOGGER_NAME or record.name.startswith(f"{_LOGGER_NAME}.")


class _LorcompLogFormatter(logging.Formatter):
    def formatTime(  # noqa: N802 - keep logging.Formatter API
        self, record: logging.LogRecord, datefmt: str | None = None
    ) -> str:
        dt = datetime.datetime.fromtimestamp(record.created, tz=datetime.timezone.utc)
        return dt.isoformat(timespec="seconds")

    def format(self, record: logging.LogRecord) -> str:
        record.lorcomp_location = _location(record)  # type: ignore[attr-defined]
        return super().format(record)


class _LorcompNamespaceFilter(logging.Filter):
    """Only pass records from the `lorcomp` logger namespace."""

    def filter(self, record: logging.LogRecord) -> bool:
        return _in_namespace(record)


def _location(record: logging.LogRecord) -> str:
    caller_file = getattr(record, "lorcomp_caller_file", None)
    caller_line = getattr(record, "lorcomp_caller_line", None)
    if isinstance(caller_file, str) and isinstance(caller_line, int):
        return f"{Path(caller_file).name}:{caller_line}"
    filename = Path(record.pathname).name if record.pathname else "<unknown>"
    return f"{filename}:{record.lineno}"


def _console_level() -> int:
    level = os.getenv("LORCOMP_LOG_LEVEL", "INFO").upper()
    return logging.getLevelNamesMapping().get(level, logging.INFO)


class _LorcompRichConsoleHandler(logging.Handler):
    def __init__(self, *, level: int) -> None:
        super().__init__(level=level)
        from rich.console import Console

        self._console = Console(stderr=True)

    def emit(self, record: logging.LogRecord) -> None:
        if getattr(record, "lorcomp_file_only", False):
            return
        level_style = self._level_style(record.levelno)
        timestamp = datetime.datetime.fromtimestamp(
            record.created, tz=datetime.timezone.utc
        ).strftime("%H:%M:%S")

        line = Text()
        line.append(timestamp, style="dim")
        line.append(" ")
        line.append(f"[{_location(record)}]", style=level_style)
        line.append(" ")
        line.append(record.getMessage())

        with _LORCOMP_CONSOLE_LOCK:
            self._console.print(line)

        if record.exc_info:
            from rich.traceback import Traceback

            exc_type, exc_value, tb = record.exc_info
            if exc_type is not None and exc_value is not None and tb is not None:
                with _LORCOMP_CONSOLE_LOCK:
                    self._console.print(
                        Traceback.from_exception(
                            exc_type, exc_value, tb, show_locals=False
                        )
                    )

    @staticmethod
    def _level_style(levelno: int) -> str:
        if levelno >= logging.ERROR:
            return "red"
        if levelno >= logging.WARNING:
            return "yellow"
        if levelno >= logging.INFO:
            return "blue"
        return "magenta"


def configure_logging() -> None:
    """Install rich console logging for the `lorcomp` namespace (idempotent)."""
    root = logging.getLogger()
    if not any(isinstance(h, _LorcompRichConsoleHandler) for h in root.handlers):
        console = _LorcompRichConsoleHandler(level=_console_level())
        console.addFilter(_LorcompNamespaceFilter())
        root.addHandler(console)


def attach_log_file(path: Path) -> logging.Handler:
    """
    Mirror `lorcomp` records into a plain-text file.

    Records logged with `extra={"lorcomp_file_only": True}` reach only this file. Returns
    the handler so callers can detach it again.
    """
    configure_logging()
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setLevel(logging.DEBUG)
    handler.addFilter(_LorcompNamespaceFilter())
    handler.setFormatter(
        _LorcompLogFormatter(
            "%(asctime)s [%(levelname)s] %(name)s %(lorcomp_location)s %(message)s"
        )
    )
    logging.getLogger().addHandler(handler)
    return handler


def get_logger(name: str | None = None) -> logging.Logger:
    """Return the `lorcomp` logger, or a child of it."""
    configure_logging()
    logger = logging.getLogger(_LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    if name is None:
        return logger
    return logger.getChild(name)


def log(message: str, *, level: str = "INFO") -> None:
    """Log a message on the `lorcomp` logger, attributed to the first caller outside the package."""
    level_no = logging.getLevelNamesMapping().get(level.upper())
    if level_no is None:
        raise ValueError(f"Unknown log level: {level!r}")

    caller_info: dict[str, object] = {}
    pkg_dir = str(Path(__file__).parent.parent)
    frame = sys._getframe(1)
    while frame is not None:
        filename = frame.f_code.co_filename
        if not filename.startswith(pkg_dir):
            caller_info = {
                "lorcomp_caller_file": filename,
                "lorcomp_caller_line": frame.f_lineno,
            }
            break
        frame = frame.f_back
    get_logger().log(level_no, message, extra=caller_info)
