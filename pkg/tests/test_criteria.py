import pytest

from bwmtopsis.criteria import (
    Criterion,
    CriterionSet,
    Sense,
    canonical_criteria,
    elicitation_slots,
)
from bwmtopsis.errors import TooFewCriteriaError


def test_canonical_has_seven_in_fixed_order():
    cs = canonical_criteria()
    assert cs.n == 7
    assert cs.criteria[0].name == "Cost of Ownership"
    assert cs.criteria[0].sense is Sense.COST
    assert cs.ids == (
        "cost_of_ownership", "safety_comfort", "range", "network_effect",
        "refuelling_infrastructure", "environmental_impact", "policy_push",
    )


def test_canonical_senses():
    cs = canonical_criteria()
    assert [c.sense for c in cs] == [Sense.COST] + [Sense.BENEFIT] * 6
    assert cs.criteria[6].name == "Policy Push & Regulations"
    assert cs.criteria[6].sense is Sense.BENEFIT


def test_canonical_is_constant_across_calls():
    assert canonical_criteria() == canonical_criteria()


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 3), (7, 11), (10, 17)])
def test_elicitation_slots(n, expected):
    assert elicitation_slots(n) == expected


def test_too_few_criteria():
    with pytest.raises(TooFewCriteriaError):
        elicitation_slots(1)
    with pytest.raises(TooFewCriteriaError):
        CriterionSet((Criterion("only", "Only", Sense.BENEFIT),))


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        CriterionSet((
            Criterion("a", "A", Sense.BENEFIT),
            Criterion("a", "A again", Sense.COST),
        ))


def test_empty_name_rejected():
    with pytest.raises(ValueError, match="name"):
        Criterion("a", "", Sense.BENEFIT)


def test_index_of():
    cs = canonical_criteria()
    assert cs.index_of("policy_push") == 6
    with pytest.raises(KeyError):
        cs.index_of("nope")
