import sys

from lorcomp.errors import RangeError
from lorcomp.runtime import install_rich_tracebacks, print_error


def test_rich_hook_is_installed_by_default(lorcomp_config, monkeypatch) -> None:
    monkeypatch.setattr(sys, "excepthook", sys.__excepthook__)
    monkeypatch.setattr(lorcomp_config, "rich_tracebacks", True)

    assert install_rich_tracebacks() is True
    assert sys.excepthook is not sys.__excepthook__


def test_rich_hook_can_be_disabled(lorcomp_config, monkeypatch) -> None:
    monkeypatch.setattr(sys, "excepthook", sys.__excepthook__)
    monkeypatch.setattr(lorcomp_config, "rich_tracebacks", False)

    assert install_rich_tracebacks() is False
    assert sys.excepthook is sys.__excepthook__


def test_print_error_is_one_line_unless_verbose(capsys) -> None:
    error = RangeError("eps must be positive", hints=["Pass --eps 1e-3."])

    print_error(error)
    short = capsys.readouterr().err

    assert "RangeError: eps must be positive" in short
    assert "Pass --eps 1e-3." in short
    assert "Traceback" not in short

    try:
        raise error
    except RangeError as exc:
        print_error(exc, verbose=True)
    assert "Traceback" in capsys.readouterr().err
