"""
Runtime helpers for lorcomp (logging, .env loading, tracebacks).
"""

from .env import load_env
from .logging import attach_log_file, configure_logging, get_logger, log
from .tracebacks import format_traceback, install_rich_tracebacks, print_error

__all__ = [
    "attach_log_file",
    "configure_logging",
    "format_traceback",
    "get_logger",
    "install_rich_tracebacks",
    "load_env",
    "log",
    "print_error",
]
