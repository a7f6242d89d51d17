"""Multivariate Gaussian fitting and the closed-form Fréchet distance."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError
from ..validation import check_feature_matrix


@dataclass(frozen=True)
class LatentGaussianSpec:
    """A full-covariance multivariate Gaussian.

    Covariance must be symmetric within 1e-6 and strictly positive
    definite; it is symmetrized exactly on construction.
    """

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        cov = np.asarray(self.covariance, dtype=np.float64)
        if cov.shape != (mean.size, mean.size):
            raise ValidationError(
                f"covariance shape {cov.shape} does not match mean dimension {mean.size}"
            )
        if not np.isfinite(mean).all() or not np.isfinite(cov).all():
            raise ValidationError("Gaussian parameters must be finite")
        if np.abs(cov - cov.T).max() > 1e-6:
            raise ValidationError("covariance is not symmetric within 1e-6")
        cov = (cov + cov.T) / 2.0
        eigvals = np.linalg.eigvalsh(cov)
        if eigvals[0] <= 0:
            raise ValidationError(
                f"covariance is not positive definite (min eigenvalue {eigvals[0]:g})"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def dim(self) -> int:
        return self.mean.size


def fit_gaussian(samples) -> LatentGaussianSpec:
    """Fit mean and unbiased sample covariance to the rows of ``samples``.

    Requires at least D+1 rows and a full-rank covariance; degenerate
    inputs raise with a hint to regularize.
    """
    X = check_feature_matrix(samples, "samples").astype(np.float64)
    n, d = X.shape
    if n < d + 1:
        raise ValidationError(
            f"need at least D+1 = {d + 1} samples for a full-rank covariance, got {n}"
        )
    mean = X.mean(axis=0)
    cov = np.cov(X, rowvar=False, ddof=1).reshape(d, d)
    cov = (cov + cov.T) / 2.0
    eigvals = np.linalg.eigvalsh(cov)
    if eigvals[0] <= 1e-12 * max(1.0, eigvals[-1]):
        raise ValidationError(
            "sample covariance is rank-deficient; add samples or regularize "
            "(e.g. add a small multiple of the identity)"
        )
    return LatentGaussianSpec(mean=mean, covariance=cov)


def _sqrtm_psd(S: np.ndarray) -> np.ndarray:
    eigvals, eigvecs = np.linalg.eigh(S)
    eigvals = np.clip(eigvals, 0.0, None)
    return (eigvecs * np.sqrt(eigvals)) @ eigvecs.T


def frechet_gaussian_distance(a: LatentGaussianSpec, b: LatentGaussianSpec) -> float:
    """Squared Wasserstein-2 distance between two Gaussians.

    ``|mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2})`` with the trace
    of the matrix square root taken from the eigenvalues of the symmetrized
    product ``S_a^{1/2} S_b S_a^{1/2}``. Small negative round-off is
    clamped to zero.
    """
    if a.dim != b.dim:
        raise ValidationError(f"dimension mismatch: {a.dim} vs {b.dim}")
    delta = a.mean - b.mean
    root_a = _sqrtm_psd(a.covariance)
    product = root_a @ b.covariance @ root_a
    product = (product + product.T) / 2.0
    eigvals = np.clip(np.linalg.eigvalsh(product), 0.0, None)
    value = float(
        delta @ delta
        + np.trace(a.covariance)
        + np.trace(b.covariance)
        - 2.0 * np.sqrt(eigvals).sum()
    )
    if value < -1e-8:
        raise ValidationError(
            f"Fréchet distance evaluated to {value:g}; covariance inputs are not PSD"
        )
    return max(value, 0.0)
