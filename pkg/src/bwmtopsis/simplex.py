"""Dense two-phase simplex solver with Bland's pivoting rule.

Solves   min c.x   s.t.   A_ub.x <= b_ub,  A_eq.x = b_eq,  x >= 0.

Bland's rule (always pick the lowest eligible index) makes the solver
deterministic and cycle-free, which matters here: the weight solver's
tie-break point on a non-unique optimal face must be reproducible
byte-for-byte across runs. Problems in this package are tiny (tens of rows),
so a dense tableau is the simplest thing that is exactly right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailureError

# Pivot elements smaller than this are treated as zero. Constraint data in
# this package is O(1..20), so anything at 1e-8 scale is phase-transition
# noise; dividing by it would blow up the tableau's conditioning.
_PIVOT_TOL = 1e-7
_COST_TOL = 1e-10
_FEAS_TOL = 1e-9
_MAX_ITER = 20000


@dataclass
class LpResult:
    status: str               # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]
    basis[row] = col


def _run_simplex(tableau: np.ndarray, basis: np.ndarray, cost: np.ndarray,
                 ncols: int) -> float:
    """Iterate to optimality of ``cost`` over the current tableau.

    ``tableau`` is m x (ncols+1) with the rhs in the last column; ``basis``
    holds the basic column index per row. Returns the optimal objective.
    Raises on unbounded rays (signalled via ValueError for the caller).
    """
    m = tableau.shape[0]
    for _ in range(_MAX_ITER):
        # reduced costs: c_j - c_B . B^-1 A_j
        cb = cost[basis]
        reduced = cost[:ncols] - cb @ tableau[:, :ncols]
        entering = -1
        for j in range(ncols):
            if reduced[j] < -_COST_TOL:
                entering = j
                break
        if entering < 0:
            return float(cb @ tableau[:, -1])

        # ratio test, ties resolved by smallest basic variable index (Bland);
        # rhs values a hair below zero (phase-transition rounding) count as 0
        # so the ratio can never go negative and select a garbage pivot
        leaving = -1
        best_ratio = np.inf
        for r in range(m):
            a = tableau[r, entering]
            if a > _PIVOT_TOL:
                ratio = max(tableau[r, -1], 0.0) / a
                if ratio < best_ratio - 1e-15 or (
                    abs(ratio - best_ratio) <= 1e-15
                    and (leaving < 0 or basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving < 0:
            raise ValueError("unbounded")
        _pivot(tableau, basis, leaving, entering)
    raise NumericalFailureError("simplex did not converge within iteration limit")


def solve_lp(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None) -> LpResult:
    """Two-phase simplex for small dense problems; x >= 0 implied."""
    c = np.asarray(c, dtype=float)
    n = c.shape[0]

    rows = []
    rhs = []
    slack_rows = []
    if a_ub is not None:
        a_ub = np.asarray(a_ub, dtype=float)
        b_ub = np.asarray(b_ub, dtype=float)
        for i in range(a_ub.shape[0]):
            rows.append(a_ub[i])
            rhs.append(b_ub[i])
            slack_rows.append(len(rows) - 1)
    if a_eq is not None:
        a_eq = np.asarray(a_eq, dtype=float)
        b_eq = np.asarray(b_eq, dtype=float)
        for i in range(a_eq.shape[0]):
            rows.append(a_eq[i])
            rhs.append(b_eq[i])

    m = len(rows)
    n_slack = len(slack_rows)
    ncols = n + n_slack

    # [A | slacks | rhs], then flip rows to make rhs non-negative
    tableau = np.zeros((m, ncols + m + 1))
    for r, row in enumerate(rows):
        tableau[r, :n] = row
        tableau[r, -1] = rhs[r]
    for k, r in enumerate(slack_rows):
        tableau[r, n + k] = 1.0
    for r in range(m):
        if tableau[r, -1] < 0:
            tableau[r] *= -1.0

    # artificial basis
    for r in range(m):
        tableau[r, ncols + r] = 1.0
    basis = np.arange(ncols, ncols + m)

    phase1_cost = np.zeros(ncols + m)
    phase1_cost[ncols:] = 1.0
    try:
        infeasibility = _run_simplex(tableau, basis, phase1_cost, ncols + m)
    except ValueError:
        raise NumericalFailureError("phase-1 subproblem reported unbounded")
    if infeasibility > _FEAS_TOL:
        return LpResult("infeasible", None, None)

    # residual infeasibility within tolerance lives in near-zero rhs values;
    # snap them so the phase transition cannot turn them negative
    rhs_col = tableau[:, -1]
    rhs_col[np.abs(rhs_col) < _FEAS_TOL] = 0.0

    # drive any leftover artificial out of the basis, or drop its row
    keep = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] >= ncols:
            pivot_col = -1
            for j in range(ncols):
                if abs(tableau[r, j]) > _PIVOT_TOL:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                _pivot(tableau, basis, r, pivot_col)
            else:
                keep[r] = False
    if not keep.all():
        tableau = tableau[keep]
        basis = basis[keep]

    tableau = np.hstack([tableau[:, :ncols], tableau[:, -1:]])

    phase2_cost = np.zeros(ncols)
    phase2_cost[:n] = c
    try:
        objective = _run_simplex(tableau, basis, phase2_cost, ncols)
    except ValueError:
        return LpResult("unbounded", None, None)

    x = np.zeros(ncols)
    x[basis] = tableau[:, -1]
    x = x[:n].copy()

    # never hand back a corrupted vertex: re-check against the original data
    if a_ub is not None and a_ub.size and (a_ub @ x - b_ub).max() > 1e-7:
        raise NumericalFailureError("simplex returned an infeasible point")
    if a_eq is not None and a_eq.size and np.abs(a_eq @ x - b_eq).max() > 1e-7:
        raise NumericalFailureError("simplex returned an infeasible point")
    if (x < -1e-9).any():
        raise NumericalFailureError("simplex returned a negative coordinate")
    return LpResult("optimal", x, objective)


def find_feasible(a_ub=None, b_ub=None, a_eq=None, b_eq=None) -> np.ndarray | None:
    """A feasible point of the system, or None if the polytope is empty."""
    ncols = (a_ub.shape[1] if a_ub is not None else a_eq.shape[1])
    result = solve_lp(np.zeros(ncols), a_ub, b_ub, a_eq, b_eq)
    return result.x if result.is_optimal else None
