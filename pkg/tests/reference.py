"""Naive reference implementations used as test oracles.

Everything here favors obviousness over speed: distances come from direct
row differences (never the norm-expansion trick used in production),
neighbor radii from a full sort, and the Pareto frontier from an all-pairs
domination matrix. The library under test must agree with these on every
*decision* (membership bits, frontier membership), not merely within a
tolerance.
"""
from __future__ import annotations

import math

import numpy as np


def naive_pairwise(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    out = np.empty((A.shape[0], B.shape[0]), dtype=np.float64)
    for i in range(A.shape[0]):
        out[i] = np.linalg.norm(A[i] - B, axis=1)
    return out


def naive_kth_radii(X, k: int) -> np.ndarray:
    """kth-nearest-neighbor distance per row, self excluded by index."""
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    radii = np.empty(n, dtype=np.float64)
    for i in range(n):
        dists = np.linalg.norm(X[i] - X, axis=1)
        others = np.sort(np.delete(dists, i))
        radii[i] = others[k - 1]
    return radii


def naive_membership(queries, manifold, k: int) -> np.ndarray:
    """True where a query lies inside at least one manifold hypersphere."""
    queries = np.asarray(queries, dtype=np.float64)
    manifold = np.asarray(manifold, dtype=np.float64)
    radii = naive_kth_radii(manifold, k)
    out = np.zeros(queries.shape[0], dtype=bool)
    for i in range(queries.shape[0]):
        dists = np.linalg.norm(queries[i] - manifold, axis=1)
        out[i] = bool(np.any(dists <= radii))
    return out


def naive_precision_recall(real, gen, k: int):
    precision = naive_membership(gen, real, k).mean()
    recall = naive_membership(real, gen, k).mean()
    return float(precision), float(recall)


def naive_realism(query, manifold, k: int, prune: bool = True) -> float:
    """Max over kept hyperspheres of radius / distance-to-query."""
    manifold = np.asarray(manifold, dtype=np.float64)
    query = np.asarray(query, dtype=np.float64)
    radii = naive_kth_radii(manifold, k)
    if prune:
        keep = math.ceil(manifold.shape[0] / 2)
        order = sorted(range(manifold.shape[0]), key=lambda j: (radii[j], j))
        kept = order[:keep]
    else:
        kept = range(manifold.shape[0])
    best = -np.inf
    for j in kept:
        d = np.linalg.norm(query - manifold[j])
        best = max(best, np.inf if d == 0.0 else radii[j] / d)
    return float(best)


def naive_pareto(points):
    """All-pairs domination filter over (precision, recall) maximization.

    Mirrors the production contract: coordinate duplicates collapse to the
    lexicographically smallest id, output sorted by descending precision.
    """
    by_coord = {}
    for p in points:
        key = (p.precision, p.recall)
        if key not in by_coord or p.id < by_coord[key].id:
            by_coord[key] = p
    unique = list(by_coord.values())
    P = np.array([p.precision for p in unique])
    R = np.array([p.recall for p in unique])
    kept = []
    for i, p in enumerate(unique):
        dominated = np.any(
            (P >= P[i]) & (R >= R[i]) & ((P > P[i]) | (R > R[i]))
        )
        if not dominated:
            kept.append(p)
    kept.sort(key=lambda p: (-p.precision, -p.recall, p.id))
    return kept
