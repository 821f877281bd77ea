"""Best/worst comparison surveys and their validation.

A survey records, on the integer 1-9 scale, how strongly the respondent's
best criterion beats every other criterion (``bo``) and how strongly every
criterion beats the worst one (``ow``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidSurveyError


class ViolationCode(str, enum.Enum):
    LENGTH_MISMATCH = "LengthMismatch"
    OUT_OF_SCALE = "OutOfScale"
    SELF_COMPARISON_NOT_UNIT = "SelfComparisonNotUnit"
    BEST_WORST_MISMATCH = "BestWorstMismatch"
    BEST_EQUALS_WORST = "BestEqualsWorst"
    INDEX_OUT_OF_RANGE = "IndexOutOfRange"


@dataclass(frozen=True)
class Violation:
    """One structured validation failure, addressable by field and index."""

    code: ViolationCode
    message: str
    field: str | None = None
    index: int | None = None

    def as_dict(self) -> dict:
        return {
            "code": self.code.value,
            "message": self.message,
            "field": self.field,
            "index": self.index,
        }


@dataclass(frozen=True)
class ComparisonSurvey:
    """One respondent's best-to-others and others-to-worst comparisons.

    ``best`` and ``worst`` are 0-based positions into the criterion order.
    Entries are kept as floats so averaged or derived structures stay
    representable, but boundary validation only admits integers 1..9.
    """

    respondent: str
    best: int
    worst: int
    bo: tuple[float, ...]
    ow: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "bo", tuple(float(v) for v in self.bo))
        object.__setattr__(self, "ow", tuple(float(v) for v in self.ow))

    @property
    def n(self) -> int:
        return len(self.bo)

    @property
    def best_to_worst(self) -> float:
        return self.bo[self.worst]

    def is_fully_consistent(self) -> bool:
        """True when every comparison chain multiplies out exactly."""
        a_bw = self.bo[self.worst]
        return all(self.bo[j] * self.ow[j] == a_bw for j in range(self.n))


def _in_scale(value: float) -> bool:
    return 1.0 <= value <= 9.0 and float(value).is_integer()


def survey_violations(survey: ComparisonSurvey, n: int) -> list[Violation]:
    """All invariant violations of ``survey`` against an ``n``-criterion set.

    Empty list means the survey is valid. Checks are ordered so that
    follow-on checks are only run when the data they index is usable.
    """
    out: list[Violation] = []

    for field, vec in (("bo", survey.bo), ("ow", survey.ow)):
        if len(vec) != n:
            out.append(Violation(
                ViolationCode.LENGTH_MISMATCH,
                f"{field} has {len(vec)} entries, expected {n}",
                field=field,
            ))
    for field, idx in (("best", survey.best), ("worst", survey.worst)):
        if not 0 <= idx < n:
            out.append(Violation(
                ViolationCode.INDEX_OUT_OF_RANGE,
                f"{field} index {idx} outside 0..{n - 1}",
                field=field,
            ))
    if out:
        return out

    if survey.best == survey.worst:
        out.append(Violation(
            ViolationCode.BEST_EQUALS_WORST,
            "best and worst criterion must differ",
            field="worst",
        ))

    for field, vec in (("bo", survey.bo), ("ow", survey.ow)):
        for j, v in enumerate(vec):
            if not _in_scale(v):
                out.append(Violation(
                    ViolationCode.OUT_OF_SCALE,
                    f"{field}[{j}] = {v:g} is not an integer in 1..9",
                    field=field,
                    index=j,
                ))

    if survey.bo[survey.best] != 1.0:
        out.append(Violation(
            ViolationCode.SELF_COMPARISON_NOT_UNIT,
            f"bo[best] must be 1, got {survey.bo[survey.best]:g}",
            field="bo",
            index=survey.best,
        ))
    if survey.ow[survey.worst] != 1.0:
        out.append(Violation(
            ViolationCode.SELF_COMPARISON_NOT_UNIT,
            f"ow[worst] must be 1, got {survey.ow[survey.worst]:g}",
            field="ow",
            index=survey.worst,
        ))

    if survey.best != survey.worst and survey.bo[survey.worst] != survey.ow[survey.best]:
        out.append(Violation(
            ViolationCode.BEST_WORST_MISMATCH,
            "bo[worst] and ow[best] must both equal the best-vs-worst "
            f"comparison, got {survey.bo[survey.worst]:g} vs {survey.ow[survey.best]:g}",
            field="ow",
            index=survey.best,
        ))

    return out


def validate_survey(survey: ComparisonSurvey, n: int) -> ComparisonSurvey:
    """Return the survey unchanged if valid, else raise with all violations."""
    violations = survey_violations(survey, n)
    if violations:
        raise InvalidSurveyError(violations)
    return survey
