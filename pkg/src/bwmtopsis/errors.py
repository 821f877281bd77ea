"""Exception hierarchy shared by every layer of the package.

``DomainError`` subclasses signal bad user input (CLI exit code 1, HTTP 4xx);
``InternalError`` subclasses signal bugs or numerical breakdown (exit code 2,
HTTP 5xx).
"""

from __future__ import annotations


class DomainError(Exception):
    """Invalid input or request; the caller can fix it."""

    code = "DomainError"

    def detail(self) -> dict:
        return {}


class InternalError(Exception):
    """The computation itself failed; not the caller's fault."""

    code = "InternalError"


# --- domain validation -------------------------------------------------

class TooFewCriteriaError(DomainError):
    code = "TooFewCriteria"


class InvalidSurveyError(DomainError):
    code = "InvalidSurvey"

    def __init__(self, violations):
        self.violations = list(violations)
        msgs = "; ".join(v.message for v in self.violations)
        super().__init__(f"survey is invalid: {msgs}")

    def detail(self) -> dict:
        return {"violations": [v.as_dict() for v in self.violations]}


class LengthMismatchError(DomainError):
    code = "LengthMismatch"


class EmptyInputError(DomainError):
    code = "EmptyInput"


class MismatchedInputsError(DomainError):
    code = "MismatchedInputs"


class InvalidSpecError(DomainError):
    code = "InvalidSpec"


class NoMatchingVehiclesError(DomainError):
    code = "NoMatchingVehicles"


# --- matrix pipeline ----------------------------------------------------

class WrongStageError(DomainError):
    code = "WrongStage"


class DegenerateColumnError(DomainError):
    code = "DegenerateColumn"


class EmptyMatrixError(DomainError):
    code = "EmptyMatrix"


class DimensionMismatchError(DomainError):
    code = "DimensionMismatch"


class DegenerateAlternativeError(DomainError):
    code = "DegenerateAlternative"


# --- io / persistence ---------------------------------------------------

class ParseError(DomainError):
    code = "ParseError"

    def __init__(self, message, source=None, location=None):
        self.source = source
        self.location = location
        prefix = f"{source}: " if source else ""
        suffix = f" (at {location})" if location else ""
        super().__init__(f"{prefix}{message}{suffix}")

    def detail(self) -> dict:
        return {"source": self.source, "location": self.location}


class SchemaError(ParseError):
    code = "SchemaError"


class CrossReferenceError(ParseError):
    code = "CrossReferenceError"


class UnknownRunError(DomainError):
    code = "UnknownRun"


class UnknownCriterionError(DomainError):
    code = "UnknownCriterion"


# --- sensitivity --------------------------------------------------------

class WeightedEntryStageError(DomainError):
    code = "WeightedEntryStage"


class DeltaOutOfRangeError(DomainError):
    code = "DeltaOutOfRange"


# --- service ------------------------------------------------------------

class UnknownSessionError(DomainError):
    code = "UnknownSession"


# --- solver internals ---------------------------------------------------

class InfeasibleError(InternalError):
    code = "Infeasible"


class NumericalFailureError(InternalError):
    code = "NumericalFailure"
