"""
Serialization of check reports and experiment tables.

Reports are JSON with a `schemaVersion` field; wall-clock runtime is dropped unless asked
for, so reruns with the same configuration write identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from pathlib import Path

from ..curvcheck import SCHEMA_VERSION, ScanReport
from ..lorspace import AxiomReport
from ..lorspace.io import write_atomic

CSV_COLUMNS = ("param", "i", "j", "value", "reference", "error")

CsvRow = tuple[float, int, int, float, float, float]


def render_scan_report(report: ScanReport, *, seed: int | None, record_runtime: bool) -> str:
    report = report.model_copy(update={"seed": seed})
    exclude = None if record_runtime else {"runtime"}
    return report.model_dump_json(by_alias=True, indent=2, exclude=exclude) + "\n"


def render_axiom_report(report: AxiomReport, *, seed: int | None) -> str:
    body: dict[str, object] = {"schemaVersion": SCHEMA_VERSION, "check": "axioms", "seed": seed}
    body.update(report.model_dump(mode="json"))
    return json.dumps(body, indent=2) + "\n"


def render_csv(rows: Iterable[Sequence[object]], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def emit(text: str, path: Path | None) -> bool:
    """Write atomically to `path`; returns False when there is no path and nothing was written."""
    if path is None:
        return False
    write_atomic(path, text)
    return True
