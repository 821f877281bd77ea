"""Decision matrices with an explicit processing-stage tag.

A matrix can enter the pipeline raw, already normalized, or already
weighted (published studies often only release the weighted form), so the
stage is data, not convention.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .criteria import CriterionSet

NORMALIZED_COLUMN_TOL = 1e-6


class Stage(str, enum.Enum):
    RAW = "raw"
    NORMALIZED = "normalized"
    WEIGHTED = "weighted"


@dataclass(frozen=True, eq=False)
class DecisionMatrix:
    """Alternatives x criteria score matrix at a declared stage.

    Values are copied and frozen at construction; row order follows
    ``alternatives`` and column order follows ``criteria``. Raw and
    normalized stages are self-validating; a weighted matrix cannot be
    (undoing the weighting needs the weight vector, which is not part of
    the matrix), so weighted data is taken as given.
    """

    alternatives: tuple[str, ...]
    criteria: CriterionSet
    values: np.ndarray
    stage: Stage = field(default=Stage.RAW)

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        if not isinstance(self.stage, Stage):
            object.__setattr__(self, "stage", Stage(self.stage))
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError(f"matrix values must be 2-D, got shape {values.shape}")
        m, n = values.shape
        if m != len(self.alternatives):
            raise ValueError(
                f"{len(self.alternatives)} alternatives but {m} value rows"
            )
        if n != self.criteria.n:
            raise ValueError(f"{self.criteria.n} criteria but {n} value columns")
        if len(set(self.alternatives)) != m:
            raise ValueError("alternative labels must be unique")
        if not np.isfinite(values).all():
            raise ValueError("matrix values must be finite")
        if self.stage is Stage.RAW and (values < 0).any():
            raise ValueError("raw scores must be non-negative")
        if self.stage is Stage.NORMALIZED:
            sumsq = (values ** 2).sum(axis=0)
            bad = np.abs(sumsq - 1.0) > NORMALIZED_COLUMN_TOL
            if bad.any():
                j = int(np.argmax(bad))
                raise ValueError(
                    f"normalized column {self.criteria.ids[j]!r} has squared "
                    f"sum {sumsq[j]!r}, expected 1"
                )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return self.criteria.n

    def column(self, criterion_id: str) -> np.ndarray:
        return self.values[:, self.criteria.index_of(criterion_id)]

    def replace_values(self, values: np.ndarray, stage: Stage) -> "DecisionMatrix":
        return DecisionMatrix(self.alternatives, self.criteria, values, stage)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecisionMatrix):
            return NotImplemented
        return (
            self.alternatives == other.alternatives
            and self.criteria == other.criteria
            and self.stage == other.stage
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.alternatives, self.criteria, self.stage,
                     self.values.tobytes()))
