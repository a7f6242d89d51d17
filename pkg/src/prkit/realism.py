"""Per-sample realism scoring and interpolation-path quality analysis.

The realism score is a continuous extension of manifold membership: the
maximum, over reference hyperspheres, of radius divided by distance to the
query. Scores above 1 mean the query sits inside at least one hypersphere.
To keep single-sample scores stable in sparse fringe regions, the half of
the hyperspheres with the largest radii is discarded before scoring
(median pruning); membership queries are unaffected by pruning.

A query that coincides exactly with a kept reference row scores +inf; the
sentinel compares greater than any finite score.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import ValidationError
from .metric import (
    DEFAULT_BLOCK_SIZE,
    DEFAULT_K,
    _kth_nn_radii64,
    pairwise_distance_block,
)
from .validation import check_feature_matrix, check_k, check_vector


class RealismScorer(BaseEstimator):
    """Continuous realism estimate against a reference sample set.

    ``fit(X)`` estimates the reference manifold (k-th NN radii) and selects
    the kept hyperspheres: with ``prune=True`` the ceil(N/2) smallest radii,
    ties broken toward lower row index; with ``prune=False`` all rows.
    ``score_samples(Q)`` returns one non-negative score per query row.

    With ``prune=False``, ``score >= 1`` is exactly equivalent to manifold
    membership; with pruning it implies membership (the kept spheres are a
    subset).
    """

    def __init__(
        self,
        k: int = DEFAULT_K,
        prune: bool = True,
        block_size: int = DEFAULT_BLOCK_SIZE,
    ):
        self.k = k
        self.prune = prune
        self.block_size = block_size

    def fit(self, X, y=None) -> "RealismScorer":
        X = check_feature_matrix(X)
        k = check_k(self.k, X.shape[0])
        self.features_ = X
        self.n_features_in_ = X.shape[1]
        self.k_ = k
        self.radii_ = _kth_nn_radii64(X.astype(np.float64), k, int(self.block_size))
        n = X.shape[0]
        if self.prune:
            n_keep = math.ceil(n / 2)
            order = np.argsort(self.radii_, kind="stable")
            self.kept_idx_ = np.sort(order[:n_keep])
        else:
            self.kept_idx_ = np.arange(n)
        return self

    def score_samples(self, X) -> np.ndarray:
        """Realism score for each row of ``X`` (float64, +inf sentinel)."""
        check_is_fitted(self, "radii_")
        Q = check_feature_matrix(X, "queries")
        if Q.shape[1] != self.n_features_in_:
            raise ValidationError(
                f"queries have dimension {Q.shape[1]}, reference has {self.n_features_in_}"
            )
        Q64 = Q.astype(np.float64)
        M64 = self.features_.astype(np.float64)
        block = int(self.block_size)
        scores = np.empty(Q64.shape[0], dtype=np.float64)
        for start in range(0, Q64.shape[0], block):
            stop = min(start + block, Q64.shape[0])
            # distances over ALL reference rows, bit-identical to the
            # membership path; pruning only restricts the max below
            dist = pairwise_distance_block(Q64[start:stop], M64)
            with np.errstate(divide="ignore", invalid="ignore"):
                np.divide(self.radii_[None, :], dist, out=dist)
            # 0/0 (zero-radius row hit exactly) is still a coincident query
            dist[np.isnan(dist)] = np.inf
            scores[start:stop] = dist[:, self.kept_idx_].max(axis=1)
        return scores

    def score_one(self, query) -> float:
        """Realism score of a single feature vector."""
        check_is_fitted(self, "radii_")
        q = check_vector(query, self.n_features_in_, "query")
        return float(self.score_samples(q[None, :])[0])


@dataclass(frozen=True)
class InterpolationPathReport:
    """Outcome of the stray-path test over a batch of interpolation paths.

    A path strays when strictly more than ``intermediate_fraction_threshold``
    of its intermediate points (endpoints excluded) score below
    ``realism_threshold``. ``stray_fraction * num_paths == num_strayed``.
    """

    num_paths: int
    num_steps: int
    num_strayed: int
    stray_fraction: float
    realism_threshold: float
    intermediate_fraction_threshold: float


def interpolation_path_stats(
    scorer: RealismScorer,
    start_points,
    end_points,
    steps: int = 20,
    realism_threshold: float = 0.9,
    intermediate_fraction_threshold: float = 0.25,
) -> InterpolationPathReport:
    """Evaluate realism along linear interpolation paths.

    Each path is sampled at ``steps`` equally spaced points from start to
    end (both included). Only the ``steps - 2`` intermediate points enter
    the stray test.
    """
    check_is_fitted(scorer, "radii_")
    if steps < 2:
        raise ValidationError(f"steps must be >= 2, got {steps}")
    a = check_feature_matrix(start_points, "start_points")
    b = check_feature_matrix(end_points, "end_points")
    if a.shape != b.shape:
        raise ValidationError(
            f"endpoint arrays must have identical shape, got {a.shape} and {b.shape}"
        )
    n_paths, dim = a.shape
    ts = np.linspace(0.0, 1.0, steps)
    pts = (1.0 - ts)[None, :, None] * a.astype(np.float64)[:, None, :]
    pts += ts[None, :, None] * b.astype(np.float64)[:, None, :]
    flat = np.ascontiguousarray(pts.reshape(n_paths * steps, dim), dtype=np.float32)
    scores = scorer.score_samples(flat).reshape(n_paths, steps)
    intermediate = scores[:, 1:-1]
    limit = intermediate_fraction_threshold * (steps - 2)
    strayed = int(((intermediate < realism_threshold).sum(axis=1) > limit).sum())
    return InterpolationPathReport(
        num_paths=n_paths,
        num_steps=steps,
        num_strayed=strayed,
        stray_fraction=strayed / n_paths,
        realism_threshold=float(realism_threshold),
        intermediate_fraction_threshold=float(intermediate_fraction_threshold),
    )
