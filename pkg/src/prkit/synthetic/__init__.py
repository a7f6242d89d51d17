"""Synthetic experiment laboratory: mixture sampling, truncation strategies,
Gaussian fitting, ellipsoid projection and Pareto-frontier selection."""

from .mixtures import GaussianMixtureSpec, mode_experiment, sample_mixture
from .gaussians import (
    LatentGaussianSpec,
    fit_gaussian,
    frechet_gaussian_distance,
)
from .ellipsoid import closest_point_on_ellipsoid
from .truncation import (
    StrategyKind,
    SweepPoint,
    SyntheticMapping,
    TruncationStrategy,
    apply_truncation,
    truncation_sweep,
)
from .pareto import ScoredPoint, pareto_frontier

__all__ = [
    "GaussianMixtureSpec",
    "LatentGaussianSpec",
    "ScoredPoint",
    "StrategyKind",
    "SweepPoint",
    "SyntheticMapping",
    "TruncationStrategy",
    "apply_truncation",
    "closest_point_on_ellipsoid",
    "fit_gaussian",
    "frechet_gaussian_distance",
    "mode_experiment",
    "pareto_frontier",
    "sample_mixture",
    "truncation_sweep",
]
