"""File formats: strict JSON/CSV parsing, canonical serialization, hashing.

Parsers reject unknown fields and report every violation with its source
file and record location, so a bad batch input fails loudly and precisely.
Serialization is canonical (sorted keys, shortest round-trip floats) which
makes content hashes and byte-level reproducibility meaningful.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import math
from pathlib import Path

import numpy as np

from .criteria import Criterion, CriterionSet, Sense
from .errors import CrossReferenceError, ParseError, SchemaError
from .matrix import DecisionMatrix, Stage
from .survey import ComparisonSurvey
from .tco import VehicleSpec
from .weights import WeightVector


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, no whitespace, strict floats."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def sha256_hex(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def load_json(text_or_path, source=None):
    """Parse a JSON file (or raw text) into Python data with file context."""
    if isinstance(text_or_path, Path):
        source = source or str(text_or_path)
        try:
            text = text_or_path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise ParseError("file not found", source=source)
        except OSError as exc:
            raise ParseError(f"cannot read file: {exc}", source=source)
    else:
        text = text_or_path
    if not text.strip():
        raise ParseError("file is empty", source=source)
    try:
        return json.loads(text), source
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", source=source,
                         location=f"line {exc.lineno}")


def _require_mapping(obj, source, location):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}",
                          source=source, location=location)


def _check_fields(obj: dict, required, optional, source, location):
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise SchemaError(f"unknown field(s) {sorted(unknown)}",
                          source=source, location=location)
    missing = [f for f in required if f not in obj]
    if missing:
        raise SchemaError(f"missing field(s) {missing}",
                          source=source, location=location)


# --- criteria -------------------------------------------------------------

def parse_criteria(data, source=None) -> CriterionSet:
    raw, source = load_json(data, source) if isinstance(data, (str, Path)) \
        else (data, source)
    if not isinstance(raw, list):
        raise SchemaError("criteria file must be a JSON array",
                          source=source, location="top level")
    criteria = []
    for k, item in enumerate(raw):
        loc = f"criteria[{k}]"
        _require_mapping(item, source, loc)
        _check_fields(item, ("id", "name", "sense"), (), source, loc)
        try:
            sense = Sense(item["sense"])
        except ValueError:
            raise SchemaError(
                f"sense must be 'benefit' or 'cost', got {item['sense']!r}",
                source=source, location=loc)
        try:
            criteria.append(Criterion(str(item["id"]), str(item["name"]), sense))
        except ValueError as exc:
            raise SchemaError(str(exc), source=source, location=loc)
    try:
        return CriterionSet(tuple(criteria))
    except Exception as exc:
        raise SchemaError(str(exc), source=source, location="top level")


def criteria_to_obj(criteria: CriterionSet) -> list:
    return [{"id": c.id, "name": c.name, "sense": c.sense.value}
            for c in criteria]


# --- surveys ----------------------------------------------------------------

def parse_survey(data, source=None) -> ComparisonSurvey:
    raw, source = load_json(data, source) if isinstance(data, (str, Path)) \
        else (data, source)
    _require_mapping(raw, source, "top level")
    _check_fields(raw, ("respondent", "best", "worst", "bo", "ow"), (),
                  source, "top level")
    for field in ("bo", "ow"):
        if not isinstance(raw[field], list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool)
                for v in raw[field]):
            raise SchemaError(f"{field} must be an array of numbers",
                              source=source, location=field)
    for field in ("best", "worst"):
        if not isinstance(raw[field], int) or isinstance(raw[field], bool):
            raise SchemaError(f"{field} must be an integer index",
                              source=source, location=field)
    return ComparisonSurvey(
        respondent=str(raw["respondent"]),
        best=raw["best"],
        worst=raw["worst"],
        bo=tuple(raw["bo"]),
        ow=tuple(raw["ow"]),
    )


def load_surveys_dir(directory: Path) -> list[ComparisonSurvey]:
    """Every ``*.json`` survey in the directory, in sorted filename order."""
    directory = Path(directory)
    if not directory.is_dir():
        raise ParseError("not a directory", source=str(directory))
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise ParseError("no survey files (*.json) found", source=str(directory))
    return [parse_survey(p) for p in paths]


def survey_to_obj(survey: ComparisonSurvey) -> dict:
    return {
        "respondent": survey.respondent,
        "best": survey.best,
        "worst": survey.worst,
        "bo": [_number(v) for v in survey.bo],
        "ow": [_number(v) for v in survey.ow],
    }


def _number(v: float):
    """Integers as ints, everything else as floats (repr round-trips)."""
    f = float(v)
    return int(f) if f.is_integer() and abs(f) < 2 ** 53 else f


# --- weights ---------------------------------------------------------------

def parse_weights(data, source=None) -> WeightVector:
    raw, source = load_json(data, source) if isinstance(data, (str, Path)) \
        else (data, source)
    _require_mapping(raw, source, "top level")
    _check_fields(raw, ("weights",),
                  ("xi_star", "consistency_ratio", "inconsistent"),
                  source, "top level")
    if not isinstance(raw["weights"], list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for v in raw["weights"]):
        raise SchemaError("weights must be an array of numbers",
                          source=source, location="weights")
    cr = raw.get("consistency_ratio")
    if raw.get("inconsistent"):
        cr = math.inf
    try:
        return WeightVector(
            weights=tuple(raw["weights"]),
            xi_star=raw.get("xi_star"),
            consistency_ratio=cr,
        )
    except Exception as exc:
        raise SchemaError(str(exc), source=source, location="weights")


def weights_to_obj(weights: WeightVector) -> dict:
    obj: dict = {"weights": [float(w) for w in weights.weights]}
    if weights.xi_star is not None:
        obj["xi_star"] = float(weights.xi_star)
    if weights.consistency_ratio is not None:
        if math.isinf(weights.consistency_ratio):
            obj["consistency_ratio"] = None
            obj["inconsistent"] = True
        else:
            obj["consistency_ratio"] = float(weights.consistency_ratio)
    return obj


# --- decision matrices -------------------------------------------------------

def parse_matrix_json(data, criteria: CriterionSet, source=None) -> DecisionMatrix:
    raw, source = load_json(data, source) if isinstance(data, (str, Path)) \
        else (data, source)
    _require_mapping(raw, source, "top level")
    _check_fields(raw, ("alternatives", "stage", "values"), ("criteria_ref",),
                  source, "top level")
    if not isinstance(raw["alternatives"], list):
        raise SchemaError("alternatives must be an array of labels",
                          source=source, location="alternatives")
    try:
        stage = Stage(raw["stage"])
    except ValueError:
        raise SchemaError(
            f"stage must be raw|normalized|weighted, got {raw['stage']!r}",
            source=source, location="stage")
    if "criteria_ref" in raw:
        ref = raw["criteria_ref"]
        if not isinstance(ref, list):
            raise SchemaError("criteria_ref must be an array of criterion ids",
                              source=source, location="criteria_ref")
        if tuple(ref) != criteria.ids:
            raise CrossReferenceError(
                f"matrix criteria {list(ref)} do not match the criteria file "
                f"{list(criteria.ids)}", source=source, location="criteria_ref")
    values = raw["values"]
    if not isinstance(values, list) or not all(isinstance(r, list) for r in values):
        raise SchemaError("values must be an array of rows",
                          source=source, location="values")
    for i, row in enumerate(values):
        if len(row) != criteria.n:
            raise CrossReferenceError(
                f"row {i} has {len(row)} values for {criteria.n} criteria",
                source=source, location=f"values[{i}]")
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                   for v in row):
            raise SchemaError("matrix entries must be numbers",
                              source=source, location=f"values[{i}]")
    try:
        return DecisionMatrix(tuple(str(a) for a in raw["alternatives"]),
                              criteria, np.array(values, dtype=float), stage)
    except ValueError as exc:
        raise SchemaError(str(exc), source=source, location="values")


def parse_matrix_csv(data, criteria: CriterionSet, stage: Stage,
                     source=None) -> DecisionMatrix:
    """CSV matrix: header ``alternative,<criterion ids...>``, one row per
    alternative, comma delimiter, dot decimals, UTF-8."""
    if isinstance(data, Path):
        source = source or str(data)
        try:
            text = data.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise ParseError("file not found", source=source)
    else:
        text = data
    if not text.strip():
        raise ParseError("file is empty", source=source)
    reader = csv.reader(_io.StringIO(text))
    rows = [row for row in reader if row]
    header = rows[0]
    if not header or header[0] != "alternative":
        raise SchemaError("first header cell must be 'alternative'",
                          source=source, location="line 1")
    if tuple(header[1:]) != criteria.ids:
        raise CrossReferenceError(
            f"matrix criteria {header[1:]} do not match the criteria file "
            f"{list(criteria.ids)}", source=source, location="line 1")
    alternatives = []
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != criteria.n + 1:
            raise SchemaError(
                f"expected {criteria.n + 1} cells, got {len(row)}",
                source=source, location=f"line {lineno}")
        alternatives.append(row[0])
        try:
            values.append([float(cell) for cell in row[1:]])
        except ValueError as exc:
            raise ParseError(f"bad number: {exc}", source=source,
                             location=f"line {lineno}")
    if not alternatives:
        raise ParseError("matrix has no data rows", source=source)
    try:
        return DecisionMatrix(tuple(alternatives), criteria,
                              np.array(values), stage)
    except ValueError as exc:
        raise SchemaError(str(exc), source=source)


def parse_matrix(path: Path, criteria: CriterionSet,
                 stage: Stage | None = None) -> DecisionMatrix:
    """Dispatch on extension; ``stage`` is required for CSV and, when given
    for JSON, must agree with the file's own stage tag."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if stage is None:
            raise SchemaError("a stage must be supplied for CSV matrices",
                              source=str(path))
        return parse_matrix_csv(path, criteria, stage)
    matrix = parse_matrix_json(path, criteria)
    if stage is not None and matrix.stage is not Stage(stage):
        raise CrossReferenceError(
            f"requested stage {Stage(stage).value!r} but file declares "
            f"{matrix.stage.value!r}", source=str(path), location="stage")
    return matrix


def matrix_to_obj(matrix: DecisionMatrix) -> dict:
    return {
        "alternatives": list(matrix.alternatives),
        "criteria_ref": list(matrix.criteria.ids),
        "stage": matrix.stage.value,
        "values": [[float(v) for v in row] for row in matrix.values],
    }


def matrix_to_csv(matrix: DecisionMatrix) -> str:
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["alternative", *matrix.criteria.ids])
    for label, row in zip(matrix.alternatives, matrix.values):
        writer.writerow([label, *[repr(float(v)) for v in row]])
    return out.getvalue()


# --- vehicle fleets -----------------------------------------------------------

_VEHICLE_FIELDS = ("label", "segment", "powertrain", "purchase_price",
                   "incentives", "annual_distance", "energy_consumption",
                   "energy_price", "annual_maintenance",
                   "annual_insurance_and_taxes", "holding_period",
                   "discount_rate", "resale_fraction")


def parse_fleet(data, source=None) -> list[VehicleSpec]:
    raw, source = load_json(data, source) if isinstance(data, (str, Path)) \
        else (data, source)
    if not isinstance(raw, list):
        raise SchemaError("fleet file must be a JSON array",
                          source=source, location="top level")
    fleet = []
    for k, item in enumerate(raw):
        loc = f"fleet[{k}]"
        _require_mapping(item, source, loc)
        _check_fields(item, _VEHICLE_FIELDS, ("currency",), source, loc)
        try:
            fleet.append(VehicleSpec(**item))
        except (ValueError, TypeError) as exc:
            raise SchemaError(str(exc), source=source, location=loc)
    return fleet


def fleet_to_obj(fleet: list[VehicleSpec]) -> list:
    out = []
    for s in fleet:
        obj = {f: getattr(s, f) for f in _VEHICLE_FIELDS}
        obj["powertrain"] = s.powertrain.value
        obj["currency"] = s.currency
        out.append(obj)
    return out
