import io

from rich.console import Console
from rich.traceback import Traceback

from ..config import LORCOMP_CONFIG


def format_traceback(exc: BaseException) -> str:
    """
    Format an exception traceback as plain text.

    Uses Rich traceback (box-drawn, readable).
    """
    buffer = io.StringIO()
    console = Console(file=buffer, record=True, width=120)
    tb = Traceback.from_exception(
        type(exc),
        exc,
        exc.__traceback__,
        show_locals=False,
        width=120,
        extra_lines=3,
        theme="monokai",
        word_wrap=False,
    )
    console.print(tb)
    return console.export_text(styles=False).rstrip()


def print_error(exc: BaseException, *, verbose: bool = False) -> None:
    """Print a library error to stderr; the full traceback only when `verbose`."""
    console = Console(stderr=True)
    if verbose:
        console.print(
            Traceback.from_exception(
                type(exc),
                exc,
                exc.__traceback__,
                show_locals=False,
                extra_lines=3,
                theme="monokai",
                word_wrap=False,
            )
        )
        return
    console.print(f"[red]error:[/red] {type(exc).__name__}: {exc}", highlight=False)


def install_rich_tracebacks() -> bool:
    """Install the rich hook for uncaught exceptions unless disabled by configuration."""
    if not LORCOMP_CONFIG.rich_tracebacks:
        return False
    from rich.traceback import install as _rich_install

    _rich_install(show_locals=False)
    return True
