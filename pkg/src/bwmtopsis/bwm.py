"""Best-worst-method weight derivation.

The weight vector minimizes the worst absolute deviation between the
judged comparison values and the realized weight ratios:

    min  xi
    s.t. |W_best / W_j  - bo[j]| <= xi      for all j
         |W_j / W_worst - ow[j]| <= xi      for all j
         sum_j W_j = 1,  W_j >= 0

For a fixed xi the ratio constraints multiply out to linear inequalities
(weights are held strictly positive by a tiny floor), so the optimum is
found by bisecting xi over [0, 9] and deciding each candidate with an exact
linear-feasibility solve. xi = 8 is always feasible for on-scale judgments
(equal weights give ratio 1 against comparison values at most 9), so the
initial bracket always closes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleError,
    MismatchedInputsError,
    NumericalFailureError,
)
from .simplex import find_feasible, solve_lp
from .survey import ComparisonSurvey, validate_survey
from .weights import WeightVector

XI_UPPER = 9.0          # one above the largest possible deviation |9 - 1|
XI_TOLERANCE = 1e-6     # bisection bracket width at termination
WEIGHT_FLOOR = 1e-9     # keeps the ratio constraints well defined

# Consistency index per best-vs-worst judgment value. The solver's xi* is
# divided by the index for the survey's a_BW to give the consistency ratio.
CONSISTENCY_INDEX = {
    1: 0.00, 2: 0.44, 3: 1.00, 4: 1.63, 5: 2.30,
    6: 3.00, 7: 3.73, 8: 4.47, 9: 5.23,
}


@dataclass(frozen=True)
class BwmSolution:
    """Solver output: weights, optimality gap, and convergence trace."""

    weights: WeightVector
    xi_star: float
    intervals: tuple[tuple[float, float], ...] | None
    iterations: int
    bracket_history: tuple[tuple[float, float], ...]

    @property
    def n(self) -> int:
        return self.weights.n


def _constraint_rows(survey: ComparisonSurvey, xi: float):
    """Linear system (in W) equivalent to the ratio constraints at fixed xi.

    Returns (a_ub, b_ub, a_eq, b_eq) over x = W - floor so the solver's
    x >= 0 convention enforces the positivity floor.
    """
    n = survey.n
    b, w = survey.best, survey.worst
    rows = []
    for j in range(n):
        lo = np.zeros(n)   # W_b - (bo_j + xi) W_j <= 0
        lo[b] += 1.0
        lo[j] -= survey.bo[j] + xi
        rows.append(lo)
        hi = np.zeros(n)   # (bo_j - xi) W_j - W_b <= 0
        hi[j] += survey.bo[j] - xi
        hi[b] -= 1.0
        rows.append(hi)
        lo2 = np.zeros(n)  # W_j - (ow_j + xi) W_w <= 0
        lo2[j] += 1.0
        lo2[w] -= survey.ow[j] + xi
        rows.append(lo2)
        hi2 = np.zeros(n)  # (ow_j - xi) W_w - W_j <= 0
        hi2[w] += survey.ow[j] - xi
        hi2[j] -= 1.0
        rows.append(hi2)
    a_ub = np.array(rows)
    # shift by the floor: A (x + floor) <= 0  ->  A x <= -A.1 * floor
    b_ub = -a_ub.sum(axis=1) * WEIGHT_FLOOR
    a_eq = np.ones((1, n))
    b_eq = np.array([1.0 - n * WEIGHT_FLOOR])
    return a_ub, b_ub, a_eq, b_eq


def feasible_weights(survey: ComparisonSurvey, xi: float) -> np.ndarray | None:
    """A weight vector satisfying the survey's constraints at ``xi``, or None."""
    a_ub, b_ub, a_eq, b_eq = _constraint_rows(survey, xi)
    x = find_feasible(a_ub, b_ub, a_eq, b_eq)
    if x is None:
        return None
    return x + WEIGHT_FLOOR


def solve_bwm(survey: ComparisonSurvey,
              with_intervals: bool = False) -> BwmSolution:
    """Optimal weights for one validated survey.

    Bisects xi until the bracket is narrower than XI_TOLERANCE and reports
    the feasible end of the final bracket, so the returned weights always
    satisfy every constraint at the reported xi_star. With
    ``with_intervals`` the per-criterion bounds of the optimal polytope are
    attached (the optimum need not be unique; degenerate bounds mean it is).
    """
    validate_survey(survey, survey.n)

    point = feasible_weights(survey, 0.0)
    if point is not None:
        xi_star = 0.0
        history = ((0.0, 0.0),)
        iterations = 0
    else:
        hi = XI_UPPER
        point = feasible_weights(survey, hi)
        if point is None:
            raise InfeasibleError(
                "no weights satisfy the survey even at the scale bound; "
                "this cannot happen for a validated survey"
            )
        lo = 0.0
        history = [(lo, hi)]
        iterations = 0
        while hi - lo > XI_TOLERANCE:
            mid = 0.5 * (lo + hi)
            candidate = feasible_weights(survey, mid)
            if candidate is None:
                lo = mid
            else:
                hi = mid
                point = candidate
            history.append((lo, hi))
            iterations += 1
        xi_star = hi
        history = tuple(history)

    weights = point / point.sum()    # rescaling preserves every ratio
    return BwmSolution(
        weights=WeightVector(tuple(weights), xi_star=xi_star),
        xi_star=xi_star,
        intervals=weight_intervals(survey, xi_star) if with_intervals else None,
        iterations=iterations,
        bracket_history=history,
    )


def consistency_ratio(solution: BwmSolution, survey: ComparisonSurvey) -> float:
    """xi* scaled by the consistency index of the best-vs-worst judgment.

    0 means perfectly consistent judgments. When the best-vs-worst value is
    1 the index is 0: any positive xi* then means outright contradiction and
    the ratio is reported as infinity.
    """
    if solution.n != survey.n:
        raise MismatchedInputsError(
            f"solution has {solution.n} weights but survey has {survey.n} criteria"
        )
    a_bw = survey.bo[survey.worst]
    index = CONSISTENCY_INDEX[int(round(a_bw))]
    if index == 0.0:
        return 0.0 if solution.xi_star <= 1e-9 else math.inf
    return solution.xi_star / index


def with_consistency(solution: BwmSolution, survey: ComparisonSurvey) -> BwmSolution:
    """Copy of ``solution`` whose weight vector carries its consistency ratio."""
    cr = consistency_ratio(solution, survey)
    return BwmSolution(
        weights=WeightVector(solution.weights.weights,
                             xi_star=solution.xi_star,
                             consistency_ratio=cr),
        xi_star=solution.xi_star,
        intervals=solution.intervals,
        iterations=solution.iterations,
        bracket_history=solution.bracket_history,
    )


def weight_intervals(survey: ComparisonSurvey,
                     xi_star: float) -> tuple[tuple[float, float], ...]:
    """Per-criterion [min, max] weight over the xi*-optimal polytope.

    The minimax optimum need not be a single point; these bounds document
    the whole optimal face. Degenerate intervals mean the optimum is unique.
    """
    n = survey.n
    a_ub, b_ub, a_eq, b_eq = _constraint_rows(survey, xi_star)
    bounds = []
    for j in range(n):
        c = np.zeros(n)
        c[j] = 1.0
        low = solve_lp(c, a_ub, b_ub, a_eq, b_eq)
        high = solve_lp(-c, a_ub, b_ub, a_eq, b_eq)
        if not (low.is_optimal and high.is_optimal):
            raise NumericalFailureError(
                f"could not bound weight {j} over the optimal polytope"
            )
        bounds.append((low.objective + WEIGHT_FLOOR,
                       -high.objective + WEIGHT_FLOOR))
    return tuple(bounds)
