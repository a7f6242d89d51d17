"""Isotropic Gaussian mixtures and the mode drop/invention experiment.

The mode experiment fixes a real distribution of 5 well-separated 2-D
modes and lets a hypothetical generator cover the first 1..10 modes of a
layout whose first five coincide with the real ones. With perfect
separation, precision should equal min(1, 5/m) and recall min(1, m/5).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError
from ..metric import DEFAULT_K, PrecisionRecallResult, precision_recall
from ..validation import check_positive_int

Seed = "int | np.random.SeedSequence"


@dataclass(frozen=True)
class GaussianMixtureSpec:
    """Mixture of isotropic Gaussian components.

    ``means`` is (n_components, dim); ``sigmas`` and ``weights`` are
    per-component. Weights must be positive and sum to 1.
    """

    means: np.ndarray
    sigmas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        means = np.atleast_2d(np.asarray(self.means, dtype=np.float64))
        sigmas = np.asarray(self.sigmas, dtype=np.float64).reshape(-1)
        weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if means.shape[0] < 1:
            raise ValidationError("mixture needs at least one component")
        if not (len(sigmas) == len(weights) == means.shape[0]):
            raise ValidationError(
                "means, sigmas and weights must have one entry per component"
            )
        if not np.isfinite(means).all():
            raise ValidationError("mixture means must be finite")
        if not ((sigmas > 0) & np.isfinite(sigmas)).all():
            raise ValidationError("all component standard deviations must be > 0")
        if not (weights > 0).all():
            raise ValidationError("all component weights must be > 0")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise ValidationError(f"weights must sum to 1, got {weights.sum()!r}")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "sigmas", sigmas)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.means.shape[1]

    @property
    def n_components(self) -> int:
        return self.means.shape[0]


def sample_mixture(spec: GaussianMixtureSpec, n: int, seed) -> np.ndarray:
    """Draw ``n`` i.i.d. samples from the mixture, deterministic given seed."""
    n = check_positive_int(n, "n")
    rng = np.random.default_rng(seed)
    component = rng.choice(spec.n_components, size=n, p=spec.weights)
    noise = rng.standard_normal((n, spec.dim))
    samples = spec.means[component] + spec.sigmas[component, None] * noise
    return samples.astype(np.float32)


def _circle_layout(num_modes: int, radius: float, dim: int = 2) -> np.ndarray:
    angles = 2.0 * np.pi * np.arange(num_modes) / num_modes
    means = np.zeros((num_modes, dim))
    means[:, 0] = radius * np.cos(angles)
    means[:, 1] = radius * np.sin(angles)
    return means


def mode_experiment(
    num_gen_modes: int,
    samples_per_side: int = 10_000,
    k: int = DEFAULT_K,
    seed: int = 0,
    mode_radius: float = 10.0,
    mode_sigma: float = 0.3,
) -> PrecisionRecallResult:
    """Precision/recall when the generator covers 1..10 of a 10-mode layout.

    The real distribution is the first 5 modes of the layout (equal
    weights); the generator draws uniformly from the first
    ``num_gen_modes``. Modes sit on a circle of radius ``mode_radius`` with
    isotropic spread ``mode_sigma``, far enough apart that membership is
    unambiguous at the default ``k``.
    """
    if not 1 <= int(num_gen_modes) <= 10:
        raise ValidationError(f"num_gen_modes must be in 1..10, got {num_gen_modes}")
    num_gen_modes = int(num_gen_modes)
    layout = _circle_layout(10, mode_radius)
    real_spec = GaussianMixtureSpec(
        means=layout[:5],
        sigmas=np.full(5, mode_sigma),
        weights=np.full(5, 1 / 5),
    )
    gen_spec = GaussianMixtureSpec(
        means=layout[:num_gen_modes],
        sigmas=np.full(num_gen_modes, mode_sigma),
        weights=np.full(num_gen_modes, 1 / num_gen_modes),
    )
    seed_real, seed_gen = np.random.SeedSequence(seed).spawn(2)
    real = sample_mixture(real_spec, samples_per_side, seed_real)
    gen = sample_mixture(gen_spec, samples_per_side, seed_gen)
    return precision_recall(
        real,
        gen,
        k=k,
        provenance={
            "experiment": "mode-drop-invention",
            "num_gen_modes": str(num_gen_modes),
            "samples_per_side": str(samples_per_side),
            "seed": str(seed),
        },
    )
