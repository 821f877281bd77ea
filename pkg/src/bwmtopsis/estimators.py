"""Scikit-learn-compatible facade over the weighting and ranking engines.

These estimators exist so the pipeline composes with the wider ecosystem
(``get_params``/``set_params``, ``clone``, sklearn pipelines); the actual
math lives in :mod:`bwmtopsis.bwm` and :mod:`bwmtopsis.topsis`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .bwm import consistency_ratio, solve_bwm
from .criteria import Criterion, CriterionSet, Sense
from .matrix import DecisionMatrix, Stage
from .survey import ComparisonSurvey
from .topsis import apply_weights, ideal_solutions, normalize, rank_alternatives
from .weights import aggregate_weights


def _coerce_survey(item, k: int) -> ComparisonSurvey:
    if isinstance(item, ComparisonSurvey):
        return item
    if isinstance(item, dict):
        return ComparisonSurvey(
            respondent=str(item.get("respondent", f"respondent-{k}")),
            best=item["best"], worst=item["worst"],
            bo=tuple(item["bo"]), ow=tuple(item["ow"]),
        )
    raise TypeError(f"cannot interpret {type(item).__name__} as a survey")


class BwmWeights(BaseEstimator):
    """Derive criterion weights from best/worst comparison surveys.

    fit(X) accepts a sequence of surveys (ComparisonSurvey objects or plain
    dicts with respondent/best/worst/bo/ow). Learned attributes:

    - ``weights_``: aggregated (mean, renormalized) weights, shape (n,)
    - ``xi_star_``: worst per-respondent optimality gap
    - ``consistency_ratio_``: worst per-respondent consistency ratio
    - ``per_respondent_``: list of (respondent, WeightVector)
    """

    def fit(self, X, y=None):
        surveys = [_coerce_survey(item, k) for k, item in enumerate(X)]
        if not surveys:
            raise ValueError("need at least one survey")
        vectors = []
        per_respondent = []
        for s in surveys:
            solution = solve_bwm(s)
            cr = consistency_ratio(solution, s)
            vec = solution.weights
            vectors.append(vec)
            per_respondent.append((s.respondent, vec, solution.xi_star, cr))
        aggregated = aggregate_weights(vectors)
        self.n_criteria_ = surveys[0].n
        self.weights_ = np.asarray(aggregated.weights)
        self.xi_star_ = max(r[2] for r in per_respondent)
        self.consistency_ratio_ = max(r[3] for r in per_respondent)
        self.per_respondent_ = per_respondent
        return self

    def transform(self, X):
        """Scale a score matrix by the learned weights."""
        check_is_fitted(self, "weights_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_criteria_:
            raise ValueError(
                f"X has {X.shape[1]} columns, expected {self.n_criteria_}")
        return X * self.weights_


class TopsisRanker(BaseEstimator):
    """Rank alternatives by closeness to the ideal solution.

    Parameters
    ----------
    weights : array-like or None
        Criterion weights; uniform when None.
    senses : sequence of "benefit"/"cost" or None
        Direction per criterion; all benefit when None.

    fit(X) ranks the rows of a raw score matrix; ``scores_``, ``ranks_`` and
    ``ranking_`` describe the fitted cohort. predict(X) scores new rows
    against the fitted cohort's normalization and ideals.
    """

    def __init__(self, weights=None, senses=None):
        self.weights = weights
        self.senses = senses

    def _criteria(self, n: int) -> CriterionSet:
        senses = self.senses if self.senses is not None else ["benefit"] * n
        if len(senses) != n:
            raise ValueError(f"{len(senses)} senses for {n} criteria")
        return CriterionSet(tuple(
            Criterion(f"c{j}", f"criterion {j}", Sense(s))
            for j, s in enumerate(senses)
        ))

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        m, n = X.shape
        criteria = self._criteria(n)
        w = (np.full(n, 1.0 / n) if self.weights is None
             else np.asarray(self.weights, dtype=float))
        if w.shape[0] != n:
            raise ValueError(f"{w.shape[0]} weights for {n} criteria")
        matrix = DecisionMatrix(
            tuple(f"a{i}" for i in range(m)), criteria, X, Stage.RAW)
        normalized = normalize(matrix)
        weighted = apply_weights(normalized, [float(v) for v in w])
        ranking = rank_alternatives(weighted)
        ideals = ideal_solutions(weighted)

        self.n_criteria_ = n
        self.criteria_ = criteria
        self.weights_ = w / w.sum() if w.sum() else w
        self.norms_ = np.sqrt((X ** 2).sum(axis=0))
        self.ideal_ = np.asarray(ideals.pis)
        self.anti_ideal_ = np.asarray(ideals.nis)
        self.applied_weights_ = np.asarray(w, dtype=float)
        self.scores_ = np.array([e.score for e in ranking.entries])
        self.ranks_ = np.array([e.rank for e in ranking.entries])
        self.ranking_ = ranking
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).ranks_

    def predict(self, X):
        """Closeness scores of new rows against the fitted cohort."""
        check_is_fitted(self, "ranking_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_criteria_:
            raise ValueError(
                f"X has {X.shape[1]} columns, expected {self.n_criteria_}")
        v = (X / self.norms_) * self.applied_weights_
        s_plus = np.sqrt(((v - self.ideal_) ** 2).sum(axis=1))
        s_minus = np.sqrt(((v - self.anti_ideal_) ** 2).sum(axis=1))
        return s_minus / (s_plus + s_minus)

