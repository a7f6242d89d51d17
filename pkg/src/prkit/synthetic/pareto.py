"""Pareto-frontier selection over (precision, recall) scored points."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError
from ..validation import check_unit_interval


@dataclass(frozen=True)
class ScoredPoint:
    """A model snapshot (or any candidate) scored by precision and recall."""

    id: str
    precision: float
    recall: float
    aux: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(
            self, "precision", check_unit_interval(self.precision, "precision")
        )
        object.__setattr__(self, "recall", check_unit_interval(self.recall, "recall"))


def pareto_frontier(points) -> list[ScoredPoint]:
    """Maximal non-dominated subset under joint (precision, recall) maximization.

    A point is dominated when another point is at least as good in both
    coordinates and strictly better in one. Exact coordinate duplicates are
    collapsed to the lexicographically smallest id. The frontier is returned
    in descending precision order (hence ascending recall).
    """
    points = list(points)
    if not points:
        raise ValidationError("pareto_frontier needs at least one point")
    by_coord: dict[tuple[float, float], ScoredPoint] = {}
    for pt in points:
        key = (pt.precision, pt.recall)
        kept = by_coord.get(key)
        if kept is None or pt.id < kept.id:
            by_coord[key] = pt
    ordered = sorted(by_coord.values(), key=lambda p: (-p.precision, -p.recall, p.id))
    frontier: list[ScoredPoint] = []
    best_recall = -np.inf
    for pt in ordered:
        if pt.recall > best_recall:
            frontier.append(pt)
            best_recall = pt.recall
    return frontier
