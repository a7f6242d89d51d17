"""Input validation helpers.

Feature matrices are plain ``(n_samples, n_features)`` numpy arrays of
finite float32 values. Every public entry point funnels its inputs through
these checks so errors surface early, with row/column provenance.
"""
from __future__ import annotations

import numpy as np

from .exceptions import ValidationError


def check_finite(data: np.ndarray, name: str = "data") -> None:
    """Raise if ``data`` contains NaN or infinity, naming the first offender."""
    if np.isfinite(data).all():
        return
    bad = np.argwhere(~np.isfinite(np.atleast_2d(data)))
    row, col = (int(v) for v in bad[0])
    raise ValidationError(
        f"{name} contains a non-finite value at row {row}, column {col}"
    )


def check_feature_matrix(X, name: str = "X") -> np.ndarray:
    """Validate and return a feature matrix as a C-contiguous float32 array.

    Accepts anything array-like with shape (n_samples, n_features),
    n_samples >= 1 and n_features >= 1. Values must be finite.
    """
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValidationError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f"{name} must have at least one row and one column, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.floating) and not np.issubdtype(arr.dtype, np.integer):
        raise ValidationError(f"{name} must be numeric, got dtype {arr.dtype}")
    check_finite(arr, name)
    return np.ascontiguousarray(arr, dtype=np.float32)


def check_vector(v, dim: int | None = None, name: str = "vector") -> np.ndarray:
    """Validate a single feature vector, optionally against an expected dimension."""
    arr = np.asarray(v, dtype=np.float64).reshape(-1)
    if arr.size < 1:
        raise ValidationError(f"{name} must be non-empty")
    check_finite(arr, name)
    if dim is not None and arr.size != dim:
        raise ValidationError(f"{name} has dimension {arr.size}, expected {dim}")
    return arr


def check_same_dim(a: np.ndarray, b: np.ndarray, names: tuple[str, str] = ("A", "B")) -> None:
    if a.shape[1] != b.shape[1]:
        raise ValidationError(
            f"{names[0]} and {names[1]} must share a feature dimension, "
            f"got {a.shape[1]} and {b.shape[1]}"
        )


def check_k(k: int, n: int, name: str = "k") -> int:
    """Neighborhood sizes must satisfy 1 <= k <= n - 1 (self excluded)."""
    k = int(k)
    if not 1 <= k <= n - 1:
        raise ValidationError(f"{name}={k} out of range for {n} samples (need 1 <= k <= {n - 1})")
    return k


def check_positive_int(value: int, name: str) -> int:
    value = int(value)
    if value < 1:
        raise ValidationError(f"{name} must be a positive integer, got {value}")
    return value


def check_unit_interval(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value}")
    return value
