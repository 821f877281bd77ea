import numpy as np
import pytest
from sklearn.base import clone

from bwmtopsis.estimators import BwmWeights, TopsisRanker
from bwmtopsis.survey import ComparisonSurvey

RAW = np.array([
    [620000.0, 7.0, 5.5],
    [540000.0, 6.0, 7.0],
    [705000.0, 8.5, 6.0],
    [580000.0, 5.5, 8.0],
])


def test_bwm_estimator_fit_attributes():
    est = BwmWeights().fit([
        ComparisonSurvey("alice", 0, 2, (1, 2, 4), (4, 2, 1)),
        {"respondent": "bob", "best": 0, "worst": 1,
         "bo": [1, 5, 3], "ow": [5, 1, 2]},
    ])
    assert est.n_criteria_ == 3
    assert est.weights_.sum() == pytest.approx(1.0)
    assert est.xi_star_ >= 0.0
    assert len(est.per_respondent_) == 2
    assert est.per_respondent_[0][0] == "alice"


def test_bwm_estimator_transform_scales_columns():
    est = BwmWeights().fit([ComparisonSurvey("a", 0, 2, (1, 2, 4), (4, 2, 1))])
    out = est.transform(np.ones((2, 3)))
    assert out[0] == pytest.approx([4 / 7, 2 / 7, 1 / 7])


def test_topsis_ranker_params_round_trip():
    est = TopsisRanker(weights=[0.5, 0.3, 0.2],
                       senses=["cost", "benefit", "benefit"])
    params = est.get_params()
    assert params == {"weights": [0.5, 0.3, 0.2],
                      "senses": ["cost", "benefit", "benefit"]}
    cloned = clone(est)
    assert cloned.get_params() == params


def test_topsis_ranker_fit_matches_core_pipeline():
    from bwmtopsis.criteria import Criterion, CriterionSet, Sense
    from bwmtopsis.matrix import DecisionMatrix, Stage
    from bwmtopsis.topsis import apply_weights, normalize, rank_alternatives

    weights = [0.5, 0.3, 0.2]
    senses = ["cost", "benefit", "benefit"]
    est = TopsisRanker(weights=weights, senses=senses).fit(RAW)

    cs = CriterionSet(tuple(Criterion(f"c{j}", f"c{j}", Sense(s))
                            for j, s in enumerate(senses)))
    matrix = DecisionMatrix(tuple(f"a{i}" for i in range(4)), cs, RAW,
                            Stage.RAW)
    ranking = rank_alternatives(apply_weights(normalize(matrix), weights))
    assert est.scores_ == pytest.approx([e.score for e in ranking.entries])
    assert list(est.ranks_) == [e.rank for e in ranking.entries]


def test_topsis_fit_predict_returns_ranks():
    ranks = TopsisRanker().fit_predict(RAW)
    assert sorted(ranks) == [1, 2, 3, 4]


def test_topsis_predict_scores_new_rows_against_cohort():
    est = TopsisRanker(senses=["cost", "benefit", "benefit"]).fit(RAW)
    scores = est.predict(RAW)
    assert scores == pytest.approx(est.scores_)
    # a dominating row (cheapest, best everywhere) must outscore the cohort
    hero = np.array([[500000.0, 9.0, 9.0]])
    assert est.predict(hero)[0] > est.scores_.max()


def test_topsis_dimension_guards():
    est = TopsisRanker().fit(RAW)
    with pytest.raises(ValueError, match="columns"):
        est.predict(RAW[:, :2])
    with pytest.raises(ValueError, match="weights"):
        TopsisRanker(weights=[0.5, 0.5]).fit(RAW)
    with pytest.raises(ValueError, match="senses"):
        TopsisRanker(senses=["benefit"]).fit(RAW)


def test_bwm_estimator_rejects_empty():
    with pytest.raises(ValueError):
        BwmWeights().fit([])
