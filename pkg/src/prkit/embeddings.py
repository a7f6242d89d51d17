"""Embedding-set I/O: the EPR1 binary format and CSV import/export.

An embedding set is an (N, D) float32 matrix, one feature vector per row.
The EPR1 format is bit-exact and little-endian so fixtures written by one
implementation can be consumed byte-identically by another:

    bytes 0-3    ASCII magic "EPR1"
    bytes 4-7    u32 LE format version (= 1)
    bytes 8-11   u32 LE N (rows)
    bytes 12-15  u32 LE D (columns)
    bytes 16-    N * D float32 LE values, row-major

Values are validated to be finite on every load.
"""
from __future__ import annotations

import os
import struct

import numpy as np

from .exceptions import CorruptionError, FormatError, ValidationError
from .validation import check_feature_matrix, check_finite

MAGIC = b"EPR1"
VERSION = 1
_HEADER = struct.Struct("<4sIII")


def read_embeddings(path: str | os.PathLike) -> np.ndarray:
    """Read an EPR1 file and return its (N, D) float32 matrix bit-exactly."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise FormatError(f"{path}: file too short for an EPR1 header")
        magic, version, n, d = _HEADER.unpack(header)
        if magic != MAGIC:
            raise FormatError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
        if version != VERSION:
            raise FormatError(f"{path}: unsupported EPR1 version {version}")
        if n < 1 or d < 1:
            raise FormatError(f"{path}: invalid shape N={n}, D={d}")
        payload = fh.read()
    expected = 4 * n * d
    if len(payload) < expected:
        raise CorruptionError(
            f"{path}: truncated payload, expected {expected} bytes of data, got {len(payload)}"
        )
    if len(payload) > expected:
        raise CorruptionError(
            f"{path}: {len(payload) - expected} trailing bytes after the declared payload"
        )
    data = np.frombuffer(payload, dtype="<f4").reshape(n, d)
    try:
        check_finite(data, f"{path}")
    except ValidationError:
        raise
    # native byte order copy; values are bit-identical
    return np.ascontiguousarray(data.astype(np.float32))


def write_embeddings(X: np.ndarray, path: str | os.PathLike) -> None:
    """Write a feature matrix to ``path`` in EPR1 format (16 + 4*N*D bytes)."""
    X = check_feature_matrix(X, "embeddings")
    n, d = X.shape
    try:
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(MAGIC, VERSION, n, d))
            fh.write(X.astype("<f4", copy=False).tobytes(order="C"))
    except OSError as exc:
        raise OSError(f"failed to write embeddings to {path}: {exc}") from exc


def import_csv(path: str | os.PathLike) -> np.ndarray:
    """Parse a comma-separated matrix of decimal numbers into float32 rows.

    Rows must have uniform width. Ragged rows and unparseable tokens are
    reported with 1-based line/column numbers. Fully empty trailing lines
    are ignored.
    """
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split(",")
        if len(tokens) == 1 and tokens[0].strip() == "":
            raise ValidationError(f"{path}: empty row at line {lineno}")
        values = []
        for colno, token in enumerate(tokens, start=1):
            try:
                values.append(float(token))
            except ValueError:
                raise ValidationError(
                    f"{path}: unparseable value {token.strip()!r} at line {lineno}, column {colno}"
                ) from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ValidationError(
                f"{path}: ragged row at line {lineno}: {len(values)} values, expected {width}"
            )
        rows.append(values)
    if not rows:
        raise ValidationError(f"{path}: no data rows (an embedding set needs N >= 1)")
    return check_feature_matrix(np.array(rows, dtype=np.float32), f"{path}")


def export_csv(X: np.ndarray, path: str | os.PathLike) -> None:
    """Write a feature matrix as CSV with float32-round-trippable decimals."""
    X = check_feature_matrix(X, "embeddings")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for row in X:
                fh.write(",".join(repr(float(v)) for v in row))
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed to write CSV to {path}: {exc}") from exc
