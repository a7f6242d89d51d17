"""Precision/recall and realism evaluation for generative models.

Estimates the support of real and generated sample distributions in a
feature space with k-nearest-neighbor hypersphere unions, then reports:

* ``precision_recall`` — fraction of generated samples covered by the
  real manifold and vice versa;
* ``RealismScorer`` — a per-sample quality score that is >= 1 exactly
  when a sample lies inside the (unpruned) reference manifold;
* ``interpolation_path_stats`` — how often linear feature-space paths
  stray off the reference manifold;
* a synthetic-experiment toolkit (Gaussian mixtures with controllable
  mode coverage, latent truncation strategies, Pareto frontiers of
  scored configurations);
* an ``EPR1`` binary embedding format plus CSV import/export.
"""
from .exceptions import CorruptionError, FormatError, PRKitError, ValidationError
from .embeddings import export_csv, import_csv, read_embeddings, write_embeddings
from .metric import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_K,
    KNNManifold,
    PrecisionRecallResult,
    kth_nn_radii,
    pairwise_distance_block,
    precision_recall,
)
from .realism import InterpolationPathReport, RealismScorer, interpolation_path_stats
from .synthetic import (
    GaussianMixtureSpec,
    LatentGaussianSpec,
    ScoredPoint,
    StrategyKind,
    SweepPoint,
    SyntheticMapping,
    TruncationStrategy,
    apply_truncation,
    closest_point_on_ellipsoid,
    fit_gaussian,
    frechet_gaussian_distance,
    mode_experiment,
    pareto_frontier,
    sample_mixture,
    truncation_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CorruptionError",
    "FormatError",
    "PRKitError",
    "ValidationError",
    "read_embeddings",
    "write_embeddings",
    "import_csv",
    "export_csv",
    "DEFAULT_K",
    "DEFAULT_BLOCK_SIZE",
    "KNNManifold",
    "PrecisionRecallResult",
    "kth_nn_radii",
    "pairwise_distance_block",
    "precision_recall",
    "RealismScorer",
    "InterpolationPathReport",
    "interpolation_path_stats",
    "GaussianMixtureSpec",
    "sample_mixture",
    "mode_experiment",
    "LatentGaussianSpec",
    "fit_gaussian",
    "frechet_gaussian_distance",
    "closest_point_on_ellipsoid",
    "StrategyKind",
    "TruncationStrategy",
    "SyntheticMapping",
    "apply_truncation",
    "truncation_sweep",
    "SweepPoint",
    "ScoredPoint",
    "pareto_frontier",
]
