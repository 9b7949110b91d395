import pytest

import lorcomp
from lorcomp.config import LorcompConfig


def test_defaults_without_environment(monkeypatch) -> None:
    for name in (
        "LORCOMP_TOL",
        "LORCOMP_SCAN_TOL",
        "LORCOMP_THREADS",
        "LORCOMP_EXECUTOR",
        "LORCOMP_MAX_WITNESSES",
    ):
        monkeypatch.delenv(name, raising=False)

    config = LorcompConfig()

    assert config.tol == 1e-9
    assert config.scan_tol == 1e-7
    assert config.thread_cap is None
    assert 1 <= config.threads <= 8
    assert config.executor == "thread"
    assert config.max_witnesses == 20


def test_environment_overrides(monkeypatch) -> None:
    monkeypatch.setenv("LORCOMP_TOL", "1e-10")
    monkeypatch.setenv("LORCOMP_SCAN_TOL", "1e-6")
    monkeypatch.setenv("LORCOMP_THREADS", "3")
    monkeypatch.setenv("LORCOMP_EXECUTOR", "Process")
    monkeypatch.setenv("LORCOMP_MAX_WITNESSES", "5")

    config = LorcompConfig()

    assert config.tol == 1e-10
    assert config.scan_tol == 1e-6
    assert config.thread_cap == 3
    assert config.threads == 3
    assert config.executor == "process"
    assert config.max_witnesses == 5


@pytest.mark.parametrize(
    ("name", "value", "message"),
    [
        ("LORCOMP_TOL", "abc", "LORCOMP_TOL must be a number"),
        ("LORCOMP_TOL", "-1", "LORCOMP_TOL must be positive"),
        ("LORCOMP_THREADS", "0", "LORCOMP_THREADS must be >= 1"),
        ("LORCOMP_THREADS", "two", "LORCOMP_THREADS must be a positive integer"),
        ("LORCOMP_EXECUTOR", "cluster", "LORCOMP_EXECUTOR must be one of"),
    ],
)
def test_invalid_environment_is_rejected(monkeypatch, name, value, message) -> None:
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError, match=message):
        LorcompConfig()


def test_thread_cap_limits_explicit_requests(lorcomp_config, monkeypatch) -> None:
    monkeypatch.setattr(lorcomp_config, "thread_cap", 2)

    assert lorcomp_config.resolve_threads(8) == 2
    assert lorcomp_config.resolve_threads(1) == 1
    assert lorcomp_config.resolve_threads(None) == lorcomp_config.threads
    with pytest.raises(ValueError, match="threads must be >= 1"):
        lorcomp_config.resolve_threads(0)


def test_resolve_tolerances(lorcomp_config) -> None:
    assert lorcomp_config.resolve_tol(None) == 1e-9
    assert lorcomp_config.resolve_tol(1e-3) == 1e-3
    assert lorcomp_config.resolve_scan_tol(None) == 1e-7


def test_setters_validate(lorcomp_config) -> None:
    lorcomp.set_tol(1e-8)
    assert lorcomp.get_tol() == 1e-8
    lorcomp.set_threads(4)
    assert lorcomp.get_threads() == 4
    with pytest.raises(ValueError, match="tol must be positive"):
        lorcomp.set_tol(0.0)
    with pytest.raises(ValueError, match="threads must be >= 1"):
        lorcomp.set_threads(0)


def test_reload_reads_environment_into_shared_config(lorcomp_config, monkeypatch) -> None:
    monkeypatch.setenv("LORCOMP_SCAN_TOL", "1e-5")

    reloaded = lorcomp.reload_config()

    assert reloaded is lorcomp.LORCOMP_CONFIG
    assert lorcomp.LORCOMP_CONFIG.scan_tol == 1e-5


def test_load_env_file_then_reload(lorcomp_config, tmp_path, monkeypatch) -> None:
    # setenv first so teardown removes whatever the .env file loads
    monkeypatch.setenv("LORCOMP_MAX_WITNESSES", "20")
    monkeypatch.delenv("LORCOMP_MAX_WITNESSES")
    env_file = tmp_path / ".env"
    env_file.write_text("LORCOMP_MAX_WITNESSES=7\n")

    assert lorcomp.load_env(env_file) is True
    lorcomp.reload_config()

    assert lorcomp.LORCOMP_CONFIG.max_witnesses == 7
