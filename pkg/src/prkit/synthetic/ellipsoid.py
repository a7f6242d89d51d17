"""Euclidean projection of exterior points onto a covariance ellipsoid.

The ellipsoid is the level set ``(x - mu)^T Sigma^{-1} (x - mu) = c``. In
the principal-axis frame (eigendecomposition of Sigma) the projection of an
exterior point y is ``x_i = y_i a_i^2 / (a_i^2 + t)`` with semi-axes
``a_i = sqrt(c * lambda_i)``, where t > 0 is the unique root of the secular
equation

    F(t) = sum_i y_i^2 a_i^2 / (a_i^2 + t)^2 - 1 = 0.

F is strictly decreasing on t >= 0 with F(0) > 0 for exterior points, so
safeguarded bisection converges in every eigenvalue regime.
"""
from __future__ import annotations

import numpy as np

from ..exceptions import ValidationError
from ..validation import check_vector

_RESIDUAL_TOL = 1e-10
_MAX_ITER = 200


def _principal_frame(covariance: np.ndarray, level: float):
    cov = np.asarray(covariance, dtype=np.float64)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValidationError(f"covariance must be square, got shape {cov.shape}")
    if np.abs(cov - cov.T).max() > 1e-6:
        raise ValidationError("covariance is not symmetric within 1e-6")
    eigvals, eigvecs = np.linalg.eigh((cov + cov.T) / 2.0)
    if eigvals[0] <= 0:
        raise ValidationError(
            f"covariance is not positive definite (min eigenvalue {eigvals[0]:g})"
        )
    axes_sq = level * eigvals
    return eigvecs, axes_sq


def _project_in_frame(y: np.ndarray, axes_sq: np.ndarray) -> np.ndarray:
    """Project exterior point ``y`` (principal frame) onto the unit level set."""
    y_sq = y * y

    def residual(t: float) -> float:
        denom = axes_sq + t
        return float((y_sq * axes_sq / (denom * denom)).sum() - 1.0)

    if residual(0.0) <= 0.0:
        raise ValidationError(
            "point lies inside or on the ellipsoid; only exterior points are clamped"
        )
    # expand upper bracket until F < 0
    hi = float(np.sqrt(axes_sq.max()) * np.linalg.norm(y) + axes_sq.max())
    for _ in range(_MAX_ITER):
        if residual(hi) < 0.0:
            break
        hi *= 2.0
    lo = 0.0
    t = hi
    for _ in range(_MAX_ITER):
        t = (lo + hi) / 2.0
        f = residual(t)
        if abs(f) < _RESIDUAL_TOL:
            break
        if f > 0.0:
            lo = t
        else:
            hi = t
    return y * axes_sq / (axes_sq + t)


def closest_point_on_ellipsoid(point, center, covariance, level: float) -> np.ndarray:
    """Euclidean-closest point on ``(x-center)^T Sigma^{-1} (x-center) = level``.

    ``point`` must lie strictly outside the ellipsoid. The returned point
    satisfies the quadratic constraint within 1e-6 relative.
    """
    if not level > 0:
        raise ValidationError(f"ellipsoid level must be > 0, got {level}")
    center = check_vector(center, name="center")
    point = check_vector(point, dim=center.size, name="point")
    eigvecs, axes_sq = _principal_frame(covariance, float(level))
    if axes_sq.size != center.size:
        raise ValidationError(
            f"covariance dimension {axes_sq.size} does not match center dimension {center.size}"
        )
    y = eigvecs.T @ (point - center)
    x = _project_in_frame(y, axes_sq)
    return center + eigvecs @ x
