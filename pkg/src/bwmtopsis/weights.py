"""Criterion weight vectors and cross-respondent aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyInputError, LengthMismatchError

SUM_TOL = 1e-9


@dataclass(frozen=True)
class WeightVector:
    """Normalized criterion weights plus solver quality measures.

    ``xi_star`` is the minimized maximum ratio deviation of the solve that
    produced the weights; ``consistency_ratio`` scales it by the judgment
    scale's consistency index. Both are None for externally supplied weights
    (for example a published weight table), and ``consistency_ratio`` is
    ``math.inf`` when the judgments are flat-out contradictory.
    """

    weights: tuple[float, ...]
    xi_star: float | None = None
    consistency_ratio: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.weights:
            raise EmptyInputError("weight vector must not be empty")
        if any(w < 0 for w in self.weights):
            raise ValueError(f"weights must be non-negative, got {self.weights}")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {SUM_TOL}, got {total!r}")
        if self.xi_star is not None and self.xi_star < 0:
            raise ValueError("xi_star must be non-negative")
        if self.consistency_ratio is not None and self.consistency_ratio < 0:
            raise ValueError("consistency_ratio must be non-negative")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def is_inconsistent(self) -> bool:
        return self.consistency_ratio is not None and math.isinf(self.consistency_ratio)

    def __getitem__(self, j: int) -> float:
        return self.weights[j]

    def __len__(self) -> int:
        return len(self.weights)


def aggregate_weights(vectors: list[WeightVector]) -> WeightVector:
    """Arithmetic mean of per-respondent weights, renormalized to sum 1.

    The mean of unit-sum vectors already sums to 1; renormalizing only mops
    up float rounding. The aggregated xi_star and consistency_ratio are the
    per-respondent maxima, i.e. the group is reported as no more consistent
    than its least consistent member.
    """
    if not vectors:
        raise EmptyInputError("cannot aggregate an empty list of weight vectors")
    n = vectors[0].n
    for k, v in enumerate(vectors):
        if v.n != n:
            raise LengthMismatchError(
                f"weight vector {k} has {v.n} entries, expected {n}"
            )
    means = [math.fsum(v.weights[j] for v in vectors) / len(vectors) for j in range(n)]
    total = math.fsum(means)
    means = [m / total for m in means]

    xis = [v.xi_star for v in vectors if v.xi_star is not None]
    crs = [v.consistency_ratio for v in vectors if v.consistency_ratio is not None]
    return WeightVector(
        weights=tuple(means),
        xi_star=max(xis) if xis else None,
        consistency_ratio=max(crs) if crs else None,
    )
