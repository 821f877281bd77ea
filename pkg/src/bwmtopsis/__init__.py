"""Best-worst-method weight elicitation and TOPSIS ranking.

Library entry points:

- :class:`bwmtopsis.estimators.BwmWeights` and
  :class:`bwmtopsis.estimators.TopsisRanker`: sklearn-style estimators.
- :func:`bwmtopsis.bwm.solve_bwm`, :func:`bwmtopsis.topsis.rank_alternatives`
  and friends: the functional core.
- :func:`bwmtopsis.pipeline.run_pipeline`: the whole chain in one call.
"""

from .bwm import BwmSolution, consistency_ratio, solve_bwm, weight_intervals
from .criteria import (
    Criterion,
    CriterionSet,
    Sense,
    canonical_criteria,
    elicitation_slots,
)
from .estimators import BwmWeights, TopsisRanker
from .matrix import DecisionMatrix, Stage
from .pipeline import (
    PipelineRun,
    RunStore,
    SensitivityReport,
    export_run,
    run_pipeline,
    sensitivity_scan,
)
from .survey import ComparisonSurvey, Violation, ViolationCode, survey_violations, validate_survey
from .tco import Powertrain, VehicleSpec, segment_average_tco, tco
from .topsis import (
    IdealSolutions,
    RankingEntry,
    RankingResult,
    apply_weights,
    ideal_solutions,
    normalize,
    performance_scores,
    rank_alternatives,
    separations,
)
from .weights import WeightVector, aggregate_weights

__version__ = "0.1.0"

__all__ = [
    "BwmSolution", "BwmWeights", "ComparisonSurvey", "Criterion",
    "CriterionSet", "DecisionMatrix", "IdealSolutions", "PipelineRun",
    "Powertrain", "RankingEntry", "RankingResult", "RunStore", "Sense",
    "SensitivityReport", "Stage", "TopsisRanker", "VehicleSpec", "Violation",
    "ViolationCode", "WeightVector", "aggregate_weights", "apply_weights",
    "canonical_criteria", "consistency_ratio", "elicitation_slots",
    "export_run", "ideal_solutions", "normalize", "performance_scores",
    "rank_alternatives", "run_pipeline", "segment_average_tco",
    "sensitivity_scan", "separations", "solve_bwm", "survey_violations",
    "tco", "validate_survey", "weight_intervals",
]
