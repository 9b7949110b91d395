import sys
from pathlib import Path

import pytest


# Make `import lorcomp` work in a src-layout checkout without requiring an install.
_ROOT = Path(__file__).resolve().parents[1]
_SRC = _ROOT / "src"
if str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))


@pytest.fixture(autouse=True)
def lorcomp_config(monkeypatch):
    import lorcomp

    monkeypatch.setattr(lorcomp.LORCOMP_CONFIG, "tol", lorcomp.LorcompConfig.DEFAULT_TOL)
    monkeypatch.setattr(lorcomp.LORCOMP_CONFIG, "scan_tol", lorcomp.LorcompConfig.DEFAULT_SCAN_TOL)
    monkeypatch.setattr(lorcomp.LORCOMP_CONFIG, "thread_cap", None)
    monkeypatch.setattr(lorcomp.LORCOMP_CONFIG, "threads", 2)
    monkeypatch.setattr(lorcomp.LORCOMP_CONFIG, "executor", "thread")
    monkeypatch.setattr(
        lorcomp.LORCOMP_CONFIG, "max_witnesses", lorcomp.LorcompConfig.DEFAULT_MAX_WITNESSES
    )
    return lorcomp.LORCOMP_CONFIG


@pytest.fixture()
def minkowski2():
    from lorcomp.lorspace import AmbientSpec

    return AmbientSpec("minkowski-2")


@pytest.fixture()
def minkowski3():
    from lorcomp.lorspace import AmbientSpec

    return AmbientSpec("minkowski-3")


@pytest.fixture()
def desitter():
    from lorcomp.lorspace import AmbientSpec

    return AmbientSpec("desitter-2")


@pytest.fixture()
def antidesitter():
    from lorcomp.lorspace import AmbientSpec

    return AmbientSpec("antidesitter-2")
