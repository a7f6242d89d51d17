"""Latent-space truncation strategies and parameter sweeps.

Seven strategies, conventionally labeled A-G, trade variation for sample
quality after training:

    A  reject-distance       drop rows farther than a threshold from the mean
    B  reject-density        drop rows outside a Mahalanobis quantile of the
                             fitted Gaussian (density ordering equals
                             Mahalanobis ordering for a Gaussian)
    C  clamp-ellipsoid       project outliers onto the quantile ellipsoid
    D  interpolate-to-mean   x -> mean + psi * (x - mean) for every row
    E  interpolate-in-z      apply D's formula in the pre-image space, then map
    F  axis-clamp-in-z       clip each pre-image coordinate to [-bound, bound],
                             then map
    G  random-replace        replace a random fraction of rows with the mean

A-D and G operate directly on the given latents; E and F expect pre-image
(Z-space) latents plus a mapping into the evaluation space. B and C share
one parameter axis: the quantile q maps to the ellipsoid level
``chi2.ppf(q, dim)``, so their sweeps are directly comparable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy import linalg as sla
from scipy.stats import chi2

from ..exceptions import ValidationError
from ..metric import DEFAULT_BLOCK_SIZE, DEFAULT_K, PrecisionRecallResult, precision_recall
from ..validation import check_feature_matrix
from .ellipsoid import _principal_frame, _project_in_frame
from .gaussians import LatentGaussianSpec, fit_gaussian, frechet_gaussian_distance


class StrategyKind(Enum):
    REJECT_DISTANCE = "reject-distance"
    REJECT_DENSITY = "reject-density"
    CLAMP_ELLIPSOID = "clamp-ellipsoid"
    INTERPOLATE_TO_MEAN = "interpolate-to-mean"
    INTERPOLATE_IN_Z = "interpolate-in-z"
    AXIS_CLAMP_IN_Z = "axis-clamp-in-z"
    RANDOM_REPLACE = "random-replace"

    @property
    def letter(self) -> str:
        return _KIND_TO_LETTER[self]

    @property
    def needs_mapping(self) -> bool:
        return self in (StrategyKind.INTERPOLATE_IN_Z, StrategyKind.AXIS_CLAMP_IN_Z)


_LETTER_TO_KIND = {
    "A": StrategyKind.REJECT_DISTANCE,
    "B": StrategyKind.REJECT_DENSITY,
    "C": StrategyKind.CLAMP_ELLIPSOID,
    "D": StrategyKind.INTERPOLATE_TO_MEAN,
    "E": StrategyKind.INTERPOLATE_IN_Z,
    "F": StrategyKind.AXIS_CLAMP_IN_Z,
    "G": StrategyKind.RANDOM_REPLACE,
}
_KIND_TO_LETTER = {kind: letter for letter, kind in _LETTER_TO_KIND.items()}


def parse_strategy_kind(name: str) -> StrategyKind:
    """Accept a single letter A-G or a kind value like 'clamp-ellipsoid'."""
    token = str(name).strip()
    if token.upper() in _LETTER_TO_KIND:
        return _LETTER_TO_KIND[token.upper()]
    try:
        return StrategyKind(token.lower())
    except ValueError:
        valid = ", ".join(sorted(_LETTER_TO_KIND))
        raise ValidationError(
            f"unknown truncation strategy {name!r}; use one of {valid} "
            f"or a full name like 'interpolate-to-mean'"
        ) from None


@dataclass(frozen=True)
class TruncationStrategy:
    """A truncation procedure plus its single scalar parameter.

    Parameter meaning per kind: distance threshold (A, > 0, +inf allowed),
    quantile in (0, 1] (B, C), interpolation factor psi in [0, 1] (D, E),
    axis bound (F, > 0), replacement fraction in [0, 1] (G).
    """

    kind: StrategyKind
    parameter: float

    def __post_init__(self):
        p = float(self.parameter)
        kind = self.kind
        if math.isnan(p):
            raise ValidationError("strategy parameter must not be NaN")
        if kind in (StrategyKind.REJECT_DISTANCE, StrategyKind.AXIS_CLAMP_IN_Z):
            if not p > 0:
                raise ValidationError(f"{kind.value} parameter must be > 0, got {p}")
        elif kind in (StrategyKind.REJECT_DENSITY, StrategyKind.CLAMP_ELLIPSOID):
            if not 0 < p <= 1:
                raise ValidationError(
                    f"{kind.value} quantile must lie in (0, 1], got {p}"
                )
        elif kind in (
            StrategyKind.INTERPOLATE_TO_MEAN,
            StrategyKind.INTERPOLATE_IN_Z,
            StrategyKind.RANDOM_REPLACE,
        ):
            if not 0 <= p <= 1:
                raise ValidationError(
                    f"{kind.value} parameter must lie in [0, 1], got {p}"
                )
        object.__setattr__(self, "parameter", p)


@dataclass(frozen=True)
class SyntheticMapping:
    """Seeded nonlinear warp ``w = M tanh(z) + b`` standing in for a
    learned pre-image-to-latent mapping; gives Z-space strategies a distinct
    space to act in."""

    matrix: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        b = np.asarray(self.offset, dtype=np.float64).reshape(-1)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != b.size:
            raise ValidationError(
                f"mapping needs a square matrix and matching offset, got {m.shape} and {b.size}"
            )
        cond = np.linalg.cond(m)
        if not cond < 1e6:
            raise ValidationError(f"mapping matrix is ill-conditioned (cond {cond:g})")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", b)

    @classmethod
    def from_seed(cls, dim: int, seed: int) -> "SyntheticMapping":
        """Deterministic well-conditioned mapping: random rotations around a
        fixed singular spectrum in [1, 3]."""
        rng = np.random.default_rng(seed)
        u, _, vt = np.linalg.svd(rng.standard_normal((dim, dim)))
        matrix = (u * np.linspace(1.0, 3.0, dim)) @ vt
        offset = 0.5 * rng.standard_normal(dim)
        return cls(matrix=matrix, offset=offset)

    @property
    def dim(self) -> int:
        return self.offset.size

    def apply(self, Z) -> np.ndarray:
        Z = check_feature_matrix(Z, "Z latents")
        if Z.shape[1] != self.dim:
            raise ValidationError(
                f"latents have dimension {Z.shape[1]}, mapping expects {self.dim}"
            )
        w = np.tanh(Z.astype(np.float64)) @ self.matrix.T + self.offset
        return w.astype(np.float32)


def _mahalanobis_sq(X64: np.ndarray, spec: LatentGaussianSpec) -> np.ndarray:
    chol = sla.cholesky(spec.covariance, lower=True)
    y = sla.solve_triangular(chol, (X64 - spec.mean).T, lower=True)
    return np.einsum("ij,ij->j", y, y)


def apply_truncation(
    strategy: TruncationStrategy,
    latents,
    spec: LatentGaussianSpec,
    mapping: SyntheticMapping | None = None,
    seed: int = 0,
) -> np.ndarray:
    """Apply one truncation strategy to a batch of latent vectors.

    For A-D and G, ``latents`` live in the space described by ``spec``; for
    E and F they are pre-images that get pushed through ``mapping`` after
    truncation. Deterministic given identical inputs and seed.
    """
    X = check_feature_matrix(latents, "latents")
    kind, p = strategy.kind, strategy.parameter
    if kind.needs_mapping:
        if mapping is None:
            raise ValidationError(f"strategy {kind.letter} ({kind.value}) requires a mapping")
        if kind is StrategyKind.INTERPOLATE_IN_Z:
            z64 = X.astype(np.float64)
            z_mean = z64.mean(axis=0)
            return mapping.apply((z_mean + p * (z64 - z_mean)).astype(np.float32))
        return mapping.apply(np.clip(X, -p, p))

    if X.shape[1] != spec.dim:
        raise ValidationError(
            f"latents have dimension {X.shape[1]}, spec has {spec.dim}"
        )
    X64 = X.astype(np.float64)

    if kind is StrategyKind.REJECT_DISTANCE:
        dist = np.linalg.norm(X64 - spec.mean, axis=1)
        keep = dist <= p
        if not keep.any():
            raise ValidationError("all rows rejected by the distance threshold")
        return X[keep]

    if kind is StrategyKind.REJECT_DENSITY:
        level = chi2.ppf(p, df=spec.dim)
        keep = _mahalanobis_sq(X64, spec) <= level
        if not keep.any():
            raise ValidationError("all rows rejected by the density quantile")
        return X[keep]

    if kind is StrategyKind.CLAMP_ELLIPSOID:
        level = chi2.ppf(p, df=spec.dim)
        if not np.isfinite(level):
            return X.copy()
        mahal_sq = _mahalanobis_sq(X64, spec)
        outliers = np.flatnonzero(mahal_sq > level)
        out = X64.copy()
        if outliers.size:
            eigvecs, axes_sq = _principal_frame(spec.covariance, float(level))
            for i in outliers:
                y = eigvecs.T @ (X64[i] - spec.mean)
                out[i] = spec.mean + eigvecs @ _project_in_frame(y, axes_sq)
        return out.astype(np.float32)

    if kind is StrategyKind.INTERPOLATE_TO_MEAN:
        return (spec.mean + p * (X64 - spec.mean)).astype(np.float32)

    if kind is StrategyKind.RANDOM_REPLACE:
        n = X.shape[0]
        n_replace = int(round(p * n))
        out = X64.copy()
        if n_replace:
            rng = np.random.default_rng(seed)
            idx = rng.choice(n, size=n_replace, replace=False)
            out[idx] = spec.mean
        return out.astype(np.float32)

    raise ValidationError(f"unhandled strategy kind {kind!r}")


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of a truncation sweep."""

    parameter: float
    result: PrecisionRecallResult
    frechet: float


def truncation_sweep(
    strategy: TruncationStrategy | StrategyKind,
    grid,
    real,
    gen_latents,
    spec: LatentGaussianSpec,
    mapping: SyntheticMapping | None = None,
    k: int = DEFAULT_K,
    seed: int = 0,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> list[SweepPoint]:
    """Evaluate one strategy over a parameter grid.

    For each parameter value the truncated latents are scored against
    ``real`` (precision/recall at the given k) and against the Gaussian
    fitted to ``real`` (Fréchet distance to the Gaussian fitted to the
    truncated output). Points are returned in ascending parameter order.
    """
    grid = [float(g) for g in np.atleast_1d(np.asarray(grid, dtype=np.float64))]
    if not grid:
        raise ValidationError("parameter grid must be non-empty")
    if isinstance(strategy, StrategyKind):
        template = TruncationStrategy(strategy, grid[0])
    else:
        template = strategy
    real = check_feature_matrix(real, "real")
    gen_latents = check_feature_matrix(gen_latents, "gen_latents")
    real_gaussian = fit_gaussian(real)
    points = []
    for value in sorted(grid):
        truncated = apply_truncation(
            replace(template, parameter=value), gen_latents, spec, mapping, seed
        )
        result = precision_recall(
            real,
            truncated,
            k=k,
            block_size=block_size,
            provenance={
                "experiment": "truncation-sweep",
                "strategy": template.kind.value,
                "parameter": repr(value),
                "seed": str(seed),
            },
        )
        frechet = frechet_gaussian_distance(real_gaussian, fit_gaussian(truncated))
        points.append(SweepPoint(parameter=value, result=result, frechet=frechet))
    return points
