"""Criteria catalog: typed criteria with a benefit/cost sense and the
canonical seven-factor vehicle-purchase set."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import TooFewCriteriaError


class Sense(str, enum.Enum):
    """Direction of preference for a criterion column."""

    BENEFIT = "benefit"   # larger is better
    COST = "cost"         # smaller is better

    def flipped(self) -> "Sense":
        return Sense.COST if self is Sense.BENEFIT else Sense.BENEFIT


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str
    sense: Sense

    def __post_init__(self):
        if not self.id:
            raise ValueError("criterion id must be non-empty")
        if not self.name:
            raise ValueError(f"criterion {self.id!r}: name must be non-empty")
        if not isinstance(self.sense, Sense):
            object.__setattr__(self, "sense", Sense(self.sense))


@dataclass(frozen=True)
class CriterionSet:
    """Ordered, immutable collection of criteria.

    Order is significant: surveys, weight vectors and decision-matrix columns
    all follow it.
    """

    criteria: tuple[Criterion, ...]

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if len(self.criteria) < 2:
            raise TooFewCriteriaError(
                "a criterion set needs at least two criteria (a best and a worst)"
            )
        seen = set()
        for c in self.criteria:
            if c.id in seen:
                raise ValueError(f"duplicate criterion id {c.id!r}")
            seen.add(c.id)

    @property
    def n(self) -> int:
        return len(self.criteria)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    @property
    def senses(self) -> tuple[Sense, ...]:
        return tuple(c.sense for c in self.criteria)

    def index_of(self, criterion_id: str) -> int:
        for i, c in enumerate(self.criteria):
            if c.id == criterion_id:
                return i
        raise KeyError(criterion_id)

    def __iter__(self):
        return iter(self.criteria)

    def __len__(self) -> int:
        return len(self.criteria)


def canonical_criteria() -> CriterionSet:
    """The seven vehicle-purchase factors, in canonical column order.

    Cost of ownership is the lone cost-sense criterion; every other factor is
    scored so that more is better.
    """
    return CriterionSet((
        Criterion("cost_of_ownership", "Cost of Ownership", Sense.COST),
        Criterion("safety_comfort", "Safety & Comfort", Sense.BENEFIT),
        Criterion("range", "Range", Sense.BENEFIT),
        Criterion("network_effect", "Network Effect", Sense.BENEFIT),
        Criterion("refuelling_infrastructure",
                  "Re-fuelling Infrastructure & Convenience", Sense.BENEFIT),
        Criterion("environmental_impact", "Environmental Impact", Sense.BENEFIT),
        Criterion("policy_push", "Policy Push & Regulations", Sense.BENEFIT),
    ))


def elicitation_slots(n: int) -> int:
    """Number of free pairwise comparisons a respondent must supply.

    Of the 2n comparison-vector entries, the best-vs-best and worst-vs-worst
    cells are fixed at 1 and the best-vs-worst cell appears in both vectors,
    leaving 2n - 3 independent inputs.
    """
    if n < 2:
        raise TooFewCriteriaError(f"need at least 2 criteria, got {n}")
    return 2 * n - 3
