"""TOPSIS ranking: normalization, weighting, ideal solutions, separation
measures, performance scores, and the final rank order."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .criteria import Sense
from .errors import (
    DegenerateAlternativeError,
    DegenerateColumnError,
    DimensionMismatchError,
    EmptyMatrixError,
    LengthMismatchError,
    WrongStageError,
)
from .matrix import DecisionMatrix, Stage
from .weights import WeightVector


@dataclass(frozen=True)
class IdealSolutions:
    """Per-criterion best (pis) and worst (nis) weighted-normalized values.

    Benefit criteria take the column max as pis and min as nis; cost
    criteria the reverse. Comparisons are exact: ideal selection is
    order-based, not magnitude-based.
    """

    pis: tuple[float, ...]
    nis: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.pis)


@dataclass(frozen=True)
class RankingEntry:
    alternative: str
    s_plus: float
    s_minus: float
    score: float
    rank: int
    tied: bool = False


@dataclass(frozen=True)
class RankingResult:
    """Per-alternative separations, scores and 1-based ranks.

    Entries keep the decision matrix's row order; ``by_rank()`` gives the
    leaderboard view.
    """

    entries: tuple[RankingEntry, ...]

    def by_rank(self) -> tuple[RankingEntry, ...]:
        return tuple(sorted(self.entries, key=lambda e: e.rank))

    @property
    def top(self) -> RankingEntry:
        return min(self.entries, key=lambda e: e.rank)

    @property
    def m(self) -> int:
        return len(self.entries)

    def entry_for(self, alternative: str) -> RankingEntry:
        for e in self.entries:
            if e.alternative == alternative:
                return e
        raise KeyError(alternative)


def _require_stage(matrix: DecisionMatrix, stage: Stage) -> None:
    if matrix.stage is not stage:
        raise WrongStageError(
            f"expected a {stage.value} matrix, got {matrix.stage.value}"
        )


def normalize(matrix: DecisionMatrix) -> DecisionMatrix:
    """Vector-normalize each column of a raw matrix to unit Euclidean norm."""
    _require_stage(matrix, Stage.RAW)
    norms = np.sqrt((matrix.values ** 2).sum(axis=0))
    for j, norm in enumerate(norms):
        if norm == 0.0:
            raise DegenerateColumnError(
                f"column {matrix.criteria.ids[j]!r} is all zeros and cannot "
                "be normalized"
            )
    return matrix.replace_values(matrix.values / norms, Stage.NORMALIZED)


def apply_weights(matrix: DecisionMatrix,
                  weights: WeightVector | Sequence[float]) -> DecisionMatrix:
    """Scale each normalized column by its criterion weight."""
    _require_stage(matrix, Stage.NORMALIZED)
    w = np.asarray(list(weights), dtype=float)
    if w.shape[0] != matrix.n:
        raise LengthMismatchError(
            f"{w.shape[0]} weights for {matrix.n} criteria"
        )
    return matrix.replace_values(matrix.values * w, Stage.WEIGHTED)


def ideal_solutions(matrix: DecisionMatrix) -> IdealSolutions:
    """Column-wise ideal and anti-ideal values, directed by criterion sense."""
    _require_stage(matrix, Stage.WEIGHTED)
    if matrix.m == 0:
        raise EmptyMatrixError("cannot take ideals of a matrix with no alternatives")
    col_max = matrix.values.max(axis=0)
    col_min = matrix.values.min(axis=0)
    pis = []
    nis = []
    for j, criterion in enumerate(matrix.criteria):
        if criterion.sense is Sense.BENEFIT:
            pis.append(float(col_max[j]))
            nis.append(float(col_min[j]))
        else:
            pis.append(float(col_min[j]))
            nis.append(float(col_max[j]))
    return IdealSolutions(tuple(pis), tuple(nis))


def separations(matrix: DecisionMatrix,
                ideals: IdealSolutions) -> tuple[np.ndarray, np.ndarray]:
    """Euclidean distances of every row from the ideal and anti-ideal.

    Row sums use exactly-rounded summation (not pairwise reduction), so the
    result is independent of term grouping: appending a zero-contribution
    criterion leaves every distance bit-identical.
    """
    _require_stage(matrix, Stage.WEIGHTED)
    if ideals.n != matrix.n:
        raise DimensionMismatchError(
            f"ideals cover {ideals.n} criteria, matrix has {matrix.n}"
        )
    diff_plus = (matrix.values - np.asarray(ideals.pis)) ** 2
    diff_minus = (matrix.values - np.asarray(ideals.nis)) ** 2
    s_plus = np.array([math.sqrt(math.fsum(row)) for row in diff_plus])
    s_minus = np.array([math.sqrt(math.fsum(row)) for row in diff_minus])
    return s_plus, s_minus


def performance_scores(s_plus: np.ndarray, s_minus: np.ndarray) -> np.ndarray:
    """Relative closeness to the ideal: s_minus / (s_plus + s_minus).

    1 means the row sits on the ideal, 0 on the anti-ideal. A row at zero
    distance from both can only happen when every column is constant, which
    makes the whole ranking meaningless; that is an error, not a default.
    """
    s_plus = np.asarray(s_plus, dtype=float)
    s_minus = np.asarray(s_minus, dtype=float)
    total = s_plus + s_minus
    if (total == 0.0).any():
        i = int(np.argmax(total == 0.0))
        raise DegenerateAlternativeError(
            f"alternative {i} is at zero distance from both ideals; "
            "all alternatives are identical on every criterion"
        )
    return s_minus / total


def compute_ranks(scores: Sequence[float]) -> tuple[tuple[int, ...], tuple[bool, ...]]:
    """1-based ranks by descending score; ties keep input order and are flagged."""
    scores = [float(s) for s in scores]
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    ranks = [0] * len(scores)
    for position, i in enumerate(order):
        ranks[i] = position + 1
    counts: dict[float, int] = {}
    for s in scores:
        counts[s] = counts.get(s, 0) + 1
    tied = tuple(counts[s] > 1 for s in scores)
    return tuple(ranks), tied


def rank_alternatives(matrix: DecisionMatrix) -> RankingResult:
    """Full ranking of a weighted matrix (ideals through ranks)."""
    ideals = ideal_solutions(matrix)
    s_plus, s_minus = separations(matrix, ideals)
    scores = performance_scores(s_plus, s_minus)
    ranks, tied = compute_ranks(scores)
    entries = tuple(
        RankingEntry(
            alternative=matrix.alternatives[i],
            s_plus=float(s_plus[i]),
            s_minus=float(s_minus[i]),
            score=float(scores[i]),
            rank=ranks[i],
            tied=tied[i],
        )
        for i in range(matrix.m)
    )
    return RankingResult(entries)
