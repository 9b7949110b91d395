"""
Space files.

A space file is a JSON document with fields `n`, `d`, `tau`, `causal` and the optional
`ambient`, `scale` and `coords`. Matrices are written one row per line with 17 significant
digits, so a save/load round trip is bit-exact.
"""

from __future__ import annotations

import json
import os
from collections.abc import Sequence
from pathlib import Path
from typing import Literal, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import SpaceParseError, StructuralError
from .ambient import AmbientKind, AmbientSpec
from .space import FiniteLorentzSpace

ModelT = TypeVar("ModelT", bound=BaseModel)


class SpaceFile(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    n: int = Field(ge=0)
    d: list[list[float]]
    tau: list[list[float]]
    causal: list[list[Literal[0, 1]]]
    ambient: AmbientKind | None = None
    scale: float | None = None
    coords: list[list[float]] | None = None


def format_number(value: float) -> str:
    text = format(float(value), ".17g")
    if text in {"inf", "-inf", "nan"}:
        raise StructuralError(f"cannot serialize non-finite value {text}")
    return text


def _matrix_lines(name: str, rows: Sequence[Sequence[str]]) -> list[str]:
    if not rows:
        return [f'  "{name}": []']
    lines = [f'  "{name}": [']
    for index, row in enumerate(rows):
        comma = "," if index < len(rows) - 1 else ""
        lines.append(f"    [{', '.join(row)}]{comma}")
    lines.append("  ]")
    return lines


def write_atomic(path: Path, text: str) -> None:
    """Write `text` to a temp sibling and rename it over `path`."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    tmp_path.write_text(text, encoding="utf-8")
    os.replace(tmp_path, path)


def render_matrices(
    header: dict[str, object], matrices: dict[str, Sequence[Sequence[str]] | None]
) -> str:
    blocks: list[list[str]] = [[f"  {json.dumps(key)}: {json.dumps(value)}"] for key, value in header.items()]
    for name, rows in matrices.items():
        if rows is not None:
            blocks.append(_matrix_lines(name, rows))
    body = ",\n".join("\n".join(block) for block in blocks)
    return "{\n" + body + "\n}\n"


def save_space(space: FiniteLorentzSpace, path: Path) -> None:
    header: dict[str, object] = {"n": space.n}
    if space.ambient is not None:
        header["ambient"] = space.ambient.kind
        header["scale"] = space.ambient.s
    matrices: dict[str, Sequence[Sequence[str]] | None] = {
        "d": [[format_number(v) for v in row] for row in space.d],
        "tau": [[format_number(v) for v in row] for row in space.tau],
        "causal": [["1" if v else "0" for v in row] for row in space.causal],
        "coords": (
            [[format_number(v) for v in row] for row in space.coords]
            if space.coords is not None and space.n > 0
            else None
        ),
    }
    write_atomic(path, render_matrices(header, matrices))


def _line_of_field(text: str, field: str) -> int | None:
    needle = f'"{field}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def parse_model(model: type[ModelT], path: Path) -> ModelT:
    """Read and validate a JSON file, mapping failures to `SpaceParseError` with diagnostics."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpaceParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceParseError(
            f"invalid JSON in {path}: {exc.msg}", line=exc.lineno
        ) from exc
    if not isinstance(data, dict):
        raise SpaceParseError(f"{path} must contain a JSON object", line=1)
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        loc = error["loc"]
        field = ".".join(str(part) for part in loc) if loc else None
        top = str(loc[0]) if loc else None
        if error["type"] == "missing":
            message = f"missing field {top!r} in {path}"
        else:
            message = f"invalid field {field!r} in {path}: {error['msg']}"
        raise SpaceParseError(
            message,
            field=field,
            line=_line_of_field(text, top) if top is not None else None,
        ) from exc


def load_space(path: Path) -> FiniteLorentzSpace:
    parsed = parse_model(SpaceFile, path)
    for name in ("d", "tau", "causal"):
        rows = getattr(parsed, name)
        if len(rows) != parsed.n or any(len(row) != parsed.n for row in rows):
            raise StructuralError(
                f"matrix {name!r} in {path} is not {parsed.n}x{parsed.n}",
                hints=["Every matrix row must have exactly n entries."],
            )
    ambient = None
    if parsed.ambient is not None:
        ambient = AmbientSpec(parsed.ambient, 1.0 if parsed.scale is None else parsed.scale)
    coords = np.array(parsed.coords, dtype=np.float64) if parsed.coords is not None else None
    return FiniteLorentzSpace(
        d=np.array(parsed.d, dtype=np.float64).reshape(parsed.n, parsed.n),
        tau=np.array(parsed.tau, dtype=np.float64).reshape(parsed.n, parsed.n),
        causal=np.array(parsed.causal, dtype=bool).reshape(parsed.n, parsed.n),
        ambient=ambient,
        coords=coords,
    )
