import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bwmtopsis import io as pio
from bwmtopsis.criteria import canonical_criteria
from bwmtopsis.errors import CrossReferenceError, ParseError, SchemaError
from bwmtopsis.matrix import Stage
from bwmtopsis.survey import ComparisonSurvey
from bwmtopsis.weights import WeightVector

from .strategies import valid_surveys

FIXTURES = Path(__file__).parent.parent / "fixtures"


def test_parse_criteria_fixture():
    cs = pio.parse_criteria(FIXTURES / "vehicle_choice" / "criteria.json")
    assert cs == canonical_criteria()


def test_criteria_round_trip():
    cs = canonical_criteria()
    assert pio.parse_criteria(pio.criteria_to_obj(cs)) == cs


def test_criteria_unknown_field_rejected():
    data = [{"id": "a", "name": "A", "sense": "benefit", "notes": "x"},
            {"id": "b", "name": "B", "sense": "cost"}]
    with pytest.raises(SchemaError, match="notes"):
        pio.parse_criteria(data)


def test_criteria_bad_sense():
    data = [{"id": "a", "name": "A", "sense": "up"},
            {"id": "b", "name": "B", "sense": "cost"}]
    with pytest.raises(SchemaError, match="sense"):
        pio.parse_criteria(data)


def test_empty_file_is_parse_error(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    with pytest.raises(ParseError, match="empty"):
        pio.parse_criteria(empty)


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError, match="not found"):
        pio.parse_criteria(tmp_path / "nope.json")


def test_malformed_json_reports_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('[{"id": "a",\n  "name": }]')
    with pytest.raises(ParseError, match="line 2"):
        pio.parse_criteria(bad)


def test_survey_round_trip():
    s = ComparisonSurvey("zoe", 0, 2, (1, 2, 4), (4, 2, 1))
    assert pio.parse_survey(pio.survey_to_obj(s)) == s


def test_survey_unknown_field():
    with pytest.raises(SchemaError, match="extra"):
        pio.parse_survey({"respondent": "r", "best": 0, "worst": 1,
                          "bo": [1, 2], "ow": [2, 1], "extra": 1})


def test_survey_non_integer_index():
    with pytest.raises(SchemaError, match="best"):
        pio.parse_survey({"respondent": "r", "best": "0", "worst": 1,
                          "bo": [1, 2], "ow": [2, 1]})


def test_load_surveys_dir_sorted():
    surveys = pio.load_surveys_dir(FIXTURES / "vehicle_choice" / "surveys")
    assert len(surveys) == 15
    assert [s.respondent for s in surveys] == sorted(s.respondent for s in surveys)


def test_weights_round_trip_including_inf():
    w = WeightVector((0.5, 0.5), xi_star=0.2, consistency_ratio=math.inf)
    obj = pio.weights_to_obj(w)
    assert obj["consistency_ratio"] is None
    assert obj["inconsistent"] is True
    back = pio.parse_weights(obj)
    assert back == w
    # the canonical form must be strict JSON
    json.loads(pio.canonical_json(obj))


def test_weights_reference_fixture_sums_to_one():
    w = pio.parse_weights(FIXTURES / "vehicle_choice" / "weights_reference.json")
    assert math.fsum(w.weights) == pytest.approx(1.0, abs=1e-9)
    assert w.n == 7


def test_matrix_csv_fixture():
    cs = canonical_criteria()
    m = pio.parse_matrix_csv(FIXTURES / "vehicle_choice" / "weighted_matrix.csv",
                             cs, Stage.WEIGHTED)
    assert m.m == 9 and m.n == 7
    assert m.stage is Stage.WEIGHTED
    assert m.alternatives[0] == "EV (8-11 Lakhs)"
    assert m.values[0, 0] == 0.048


def test_matrix_csv_wrong_column_count():
    cs = canonical_criteria()
    text = ("alternative," + ",".join(cs.ids[:-1]) + "\n"
            + "a," + ",".join(["0.1"] * 6) + "\n")
    with pytest.raises(CrossReferenceError):
        pio.parse_matrix_csv(text, cs, Stage.WEIGHTED, source="inline")


def test_matrix_csv_bad_number():
    cs = canonical_criteria()
    text = ("alternative," + ",".join(cs.ids) + "\n"
            + "a,0.1,0.1,0.1,x,0.1,0.1,0.1\n")
    with pytest.raises(ParseError, match="line 2"):
        pio.parse_matrix_csv(text, cs, Stage.WEIGHTED, source="inline")


def test_matrix_json_round_trip():
    cs = canonical_criteria()
    m = pio.parse_matrix_csv(FIXTURES / "vehicle_choice" / "weighted_matrix.csv",
                             cs, Stage.WEIGHTED)
    back = pio.parse_matrix_json(pio.canonical_json(pio.matrix_to_obj(m)), cs)
    assert back == m


def test_matrix_json_cross_reference():
    cs = canonical_criteria()
    obj = {"alternatives": ["a"], "stage": "weighted",
           "criteria_ref": ["wrong"] * 7, "values": [[0.1] * 7]}
    with pytest.raises(CrossReferenceError):
        pio.parse_matrix_json(obj, cs)


def test_matrix_json_unknown_field():
    cs = canonical_criteria()
    obj = {"alternatives": ["a"], "stage": "weighted",
           "values": [[0.1] * 7], "comment": "hi"}
    with pytest.raises(SchemaError, match="comment"):
        pio.parse_matrix_json(obj, cs)


def test_matrix_dispatch_checks_stage_agreement():
    cs = canonical_criteria()
    with pytest.raises(SchemaError, match="stage"):
        pio.parse_matrix(FIXTURES / "vehicle_choice" / "weighted_matrix.csv", cs)


def test_matrix_json_stage_must_match_requested(tmp_path):
    cs = canonical_criteria()
    m = pio.parse_matrix_csv(FIXTURES / "vehicle_choice" / "weighted_matrix.csv",
                             cs, Stage.WEIGHTED)
    path = tmp_path / "matrix.json"
    path.write_text(pio.canonical_json(pio.matrix_to_obj(m)))
    assert pio.parse_matrix(path, cs, Stage.WEIGHTED) == m
    with pytest.raises(CrossReferenceError, match="declares"):
        pio.parse_matrix(path, cs, Stage.RAW)


def test_fleet_fixture_parses():
    fleet = pio.parse_fleet(FIXTURES / "vehicle_choice" / "fleet.json")
    assert len(fleet) == 8
    assert {v.powertrain.value for v in fleet} == {"EV", "ICEV", "HEV"}
    assert pio.parse_fleet(pio.fleet_to_obj(fleet)) == fleet


def test_fleet_unknown_field():
    fleet = pio.parse_fleet(FIXTURES / "vehicle_choice" / "fleet.json")
    obj = pio.fleet_to_obj(fleet)
    obj[0]["warranty"] = 5
    with pytest.raises(SchemaError, match="warranty"):
        pio.parse_fleet(obj)


def test_canonical_json_is_deterministic_and_sorted():
    a = pio.canonical_json({"b": 1, "a": [1.5, 2]})
    assert a == '{"a":[1.5,2],"b":1}'
    assert pio.sha256_hex(a) == pio.sha256_hex(a)


def test_float_round_trip_via_repr():
    values = [0.1, 1 / 3, 2 / 7, 0.2782, math.pi]
    dumped = pio.canonical_json(values)
    assert json.loads(dumped) == values


@given(valid_surveys())
def test_survey_round_trip_property(survey):
    obj = json.loads(pio.canonical_json(pio.survey_to_obj(survey)))
    assert pio.parse_survey(obj) == survey


@given(st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=8),
       st.floats(0, 8), st.booleans())
def test_weights_round_trip_property(raw, xi, infinite):
    total = math.fsum(raw)
    w = WeightVector(tuple(v / total for v in raw), xi_star=xi,
                     consistency_ratio=math.inf if infinite else xi / 2)
    obj = json.loads(pio.canonical_json(pio.weights_to_obj(w)))
    assert pio.parse_weights(obj) == w
