"""Deterministic machine-readable output: JSON/CSV emission and run manifests.

Floats are printed with 6 significant digits; the +inf realism sentinel
becomes the token ``inf`` (a bare cell in CSV, a string in JSON). Emission
preserves dict insertion order, so identical inputs produce identical
bytes.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field


def format_float(value: float) -> str:
    """Render a float with 6 significant digits; inf keeps its token."""
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        raise ValueError("refusing to serialize NaN")
    return "%#.6g" % value


def _dump(value, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{pad}{json.dumps(str(key))}: {_dump(val, indent, level + 1)}"
            for key, val in value.items()
        )
        return "{\n" + items + "\n" + close_pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join(f"{pad}{_dump(val, indent, level + 1)}" for val in value)
        return "[\n" + items + "\n" + close_pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        text = format_float(value)
        return json.dumps(text) if text.endswith("inf") else text
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__} deterministically")


def dumps_json(document: dict) -> str:
    """Serialize a report document to stable, human-readable JSON."""
    return _dump(document, indent=2, level=0) + "\n"


def format_csv(header: list[str], rows: list[list]) -> str:
    """Render rows as CSV with the toolkit's float formatting."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, bool):
                cells.append("true" if cell else "false")
            elif isinstance(cell, float):
                cells.append(format_float(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def sha256_file(path: str | os.PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    """Reproducibility record serialized alongside every CLI output.

    Re-running a command with an identical manifest (same inputs, same
    parameters, same seed) reproduces identical metric outputs; only
    ``duration_seconds`` varies between runs.
    """

    command: str
    version: str
    seed: int | None
    parameters: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    duration_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "seed": self.seed,
            "parameters": self.parameters,
            "inputs": self.inputs,
            "duration_seconds": self.duration_seconds,
        }
