"""End-to-end orchestration: surveys to weights to ranking, what-if weight
perturbation, and a content-addressed run store.

A run is identified by a hash of its canonicalized inputs, so identical
inputs always collapse to the same run id and a persisted run can be
re-executed and byte-compared.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io as _io
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io as pio
from .bwm import solve_bwm, with_consistency
from .criteria import CriterionSet
from .errors import (
    DeltaOutOfRangeError,
    EmptyInputError,
    InvalidSurveyError,
    LengthMismatchError,
    UnknownCriterionError,
    UnknownRunError,
    WeightedEntryStageError,
)
from .matrix import DecisionMatrix, Stage
from .survey import ComparisonSurvey, validate_survey
from .topsis import RankingEntry, RankingResult, apply_weights, normalize, rank_alternatives
from .weights import WeightVector, aggregate_weights


@dataclass(frozen=True)
class InputRef:
    kind: str
    name: str
    sha256: str

    def as_dict(self) -> dict:
        return {"kind": self.kind, "name": self.name, "sha256": self.sha256}


@dataclass(frozen=True)
class RespondentSolution:
    respondent: str
    weights: WeightVector

    def as_dict(self) -> dict:
        return {"respondent": self.respondent,
                **pio.weights_to_obj(self.weights)}


@dataclass(frozen=True)
class PipelineRun:
    """One complete evaluation with everything needed to replay it."""

    run_id: str
    criteria: CriterionSet
    entry_matrix: DecisionMatrix
    weights: WeightVector
    per_respondent: tuple[RespondentSolution, ...]
    ranking: RankingResult
    inputs: tuple[InputRef, ...]
    weighted_matrix: DecisionMatrix
    normalized_matrix: DecisionMatrix | None
    created_at: str

    @property
    def entry_stage(self) -> Stage:
        return self.entry_matrix.stage


@dataclass(frozen=True)
class SensitivityEntry:
    delta: float
    reranking: RankingResult
    flipped: bool


@dataclass(frozen=True)
class SensitivityReport:
    criterion: str
    base_ranking: RankingResult
    entries: tuple[SensitivityEntry, ...]


def _annotate(exc: Exception, kind: str, index: int | None = None,
              source: str | None = None):
    where = kind if index is None else f"{kind} #{index}"
    if source:
        where += f" from {source}"
    note = f"[input: {where}]"
    exc.args = (f"{note} {exc.args[0]}" if exc.args else note,) + exc.args[1:]
    return exc


def run_pipeline(criteria: CriterionSet,
                 matrix: DecisionMatrix,
                 surveys: list[ComparisonSurvey] | None = None,
                 weights: WeightVector | None = None,
                 store: "RunStore | None" = None,
                 input_names: dict[str, str] | None = None,
                 created_at: str | None = None) -> PipelineRun:
    """Validate, weigh, rank, and optionally persist.

    Weights come either from solving and aggregating ``surveys`` or from an
    explicit ``weights`` vector (exactly one source must be given). A raw
    matrix goes through normalization and weighting; a weighted matrix skips
    straight to the ideal-solution steps.
    """
    if (surveys is None or len(surveys) == 0) and weights is None:
        raise EmptyInputError("need surveys or an explicit weight vector")
    if surveys and weights is not None:
        raise EmptyInputError("give surveys or explicit weights, not both")

    names = input_names or {}
    per_respondent = []
    if surveys:
        for i, survey in enumerate(surveys):
            try:
                validate_survey(survey, criteria.n)
                solution = with_consistency(solve_bwm(survey), survey)
            except InvalidSurveyError as exc:
                raise _annotate(exc, "survey", i, names.get("surveys"))
            per_respondent.append(
                RespondentSolution(survey.respondent, solution.weights))
        weights = aggregate_weights([r.weights for r in per_respondent])

    if weights.n != criteria.n:
        raise _annotate(
            LengthMismatchError(
                f"weight vector has {weights.n} entries for {criteria.n} criteria"),
            "weights")

    if matrix.stage is Stage.RAW:
        normalized = normalize(matrix)
        weighted = apply_weights(normalized, weights)
    elif matrix.stage is Stage.NORMALIZED:
        normalized = matrix
        weighted = apply_weights(normalized, weights)
    else:
        normalized = None
        weighted = matrix

    ranking = rank_alternatives(weighted)

    canonical_inputs = {
        "criteria": pio.criteria_to_obj(criteria),
        "surveys": [pio.survey_to_obj(s) for s in surveys] if surveys else None,
        "weights": pio.weights_to_obj(weights) if not surveys else None,
        "matrix": pio.matrix_to_obj(matrix),
    }
    refs = tuple(
        InputRef(kind, names.get(kind, f"<{kind}>"),
                 pio.sha256_hex(pio.canonical_json(payload)))
        for kind, payload in canonical_inputs.items() if payload is not None
    )
    run_id = pio.sha256_hex(pio.canonical_json(canonical_inputs))[:12]

    run = PipelineRun(
        run_id=run_id,
        criteria=criteria,
        entry_matrix=matrix,
        weights=weights,
        per_respondent=tuple(per_respondent),
        ranking=ranking,
        inputs=refs,
        weighted_matrix=weighted,
        normalized_matrix=normalized,
        created_at=created_at or _dt.datetime.now(_dt.timezone.utc)
                                   .isoformat(timespec="seconds"),
    )
    if store is not None:
        store.save(run, surveys=surveys)
    return run


def _reweighted(run: PipelineRun, new_weights: np.ndarray) -> DecisionMatrix:
    """The weighted matrix under perturbed weights, by either route."""
    if run.normalized_matrix is not None:
        return apply_weights(run.normalized_matrix,
                             [float(w) for w in new_weights])
    old = np.asarray(run.weights.weights)
    if (old == 0.0).any():
        raise WeightedEntryStageError(
            "cannot reweight a weighted-stage matrix: a zero original weight "
            "makes its normalized column unrecoverable"
        )
    scale = new_weights / old
    return run.weighted_matrix.replace_values(
        run.weighted_matrix.values * scale, Stage.WEIGHTED)


def sensitivity_scan(run: PipelineRun, criterion_id: str,
                     deltas: list[float]) -> SensitivityReport:
    """Re-rank under signed perturbations of one criterion's weight.

    Each delta is added to the criterion's weight and the whole vector is
    renormalized to sum 1 before re-running the weighting and ranking steps.
    ``flipped`` records whether the top alternative changed against the run.
    """
    try:
        j = run.criteria.index_of(criterion_id)
    except KeyError:
        raise UnknownCriterionError(
            f"no criterion {criterion_id!r}; have {list(run.criteria.ids)}")
    base = np.asarray(run.weights.weights)
    base_top = run.ranking.top.alternative

    entries = []
    for delta in deltas:
        perturbed = base.copy()
        if delta != 0.0:
            perturbed[j] += delta
            if perturbed[j] <= 0:
                raise DeltaOutOfRangeError(
                    f"delta {delta} drives weight of {criterion_id!r} to "
                    f"{perturbed[j]:g}; it must stay positive"
                )
            perturbed = perturbed / perturbed.sum()
        # delta 0 skips the (mathematically idempotent) renormalization so
        # the base ranking is reproduced bit for bit
        reranked = rank_alternatives(_reweighted(run, perturbed))
        entries.append(SensitivityEntry(
            delta=float(delta),
            reranking=reranked,
            flipped=reranked.top.alternative != base_top,
        ))
    return SensitivityReport(criterion=criterion_id,
                             base_ranking=run.ranking,
                             entries=tuple(entries))


# --- serialization of runs ---------------------------------------------------

def ranking_to_obj(ranking: RankingResult) -> list:
    return [
        {"alternative": e.alternative, "s_plus": e.s_plus, "s_minus": e.s_minus,
         "score": e.score, "rank": e.rank, "tied": e.tied}
        for e in ranking.entries
    ]


def ranking_from_obj(obj: list) -> RankingResult:
    return RankingResult(tuple(
        RankingEntry(e["alternative"], e["s_plus"], e["s_minus"],
                     e["score"], e["rank"], e.get("tied", False))
        for e in obj
    ))


def run_to_obj(run: PipelineRun) -> dict:
    return {
        "run_id": run.run_id,
        "created_at": run.created_at,
        "inputs": [r.as_dict() for r in run.inputs],
        "entry_stage": run.entry_stage.value,
        "weights": pio.weights_to_obj(run.weights),
        "per_respondent": [r.as_dict() for r in run.per_respondent],
        "ranking": ranking_to_obj(run.ranking),
    }


def export_run(run: PipelineRun, format: str = "json") -> bytes:
    """Deterministic export: full JSON document or the ranking as CSV."""
    if format == "json":
        return (pio.canonical_json(run_to_obj(run)) + "\n").encode("utf-8")
    if format == "csv":
        out = _io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["alternative", "s_plus", "s_minus", "score", "rank"])
        for e in run.ranking.by_rank():
            writer.writerow([e.alternative, repr(e.s_plus), repr(e.s_minus),
                             repr(e.score), e.rank])
        return out.getvalue().encode("utf-8")
    raise ValueError(f"unknown export format {format!r}")


def sensitivity_to_obj(report: SensitivityReport) -> dict:
    return {
        "criterion": report.criterion,
        "base_ranking": ranking_to_obj(report.base_ranking),
        "entries": [
            {"delta": e.delta, "flipped": e.flipped,
             "reranking": ranking_to_obj(e.reranking)}
            for e in report.entries
        ],
    }


# --- run store ---------------------------------------------------------------

class RunStore:
    """Directory of run documents, one JSON file per run id.

    Writes go through a temp file and an atomic rename so concurrent readers
    never see a half-written document.
    """

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, run_id: str) -> Path:
        return self.directory / f"{run_id}.json"

    def save(self, run: PipelineRun,
             surveys: list[ComparisonSurvey] | None = None) -> Path:
        document = {
            **run_to_obj(run),
            "payload": {
                "criteria": pio.criteria_to_obj(run.criteria),
                "surveys": [pio.survey_to_obj(s) for s in surveys]
                           if surveys else None,
                "weights": None if surveys else pio.weights_to_obj(run.weights),
                "matrix": pio.matrix_to_obj(run.entry_matrix),
            },
        }
        path = self._path(run.run_id)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(pio.canonical_json(document) + "\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def load_document(self, run_id: str) -> dict:
        path = self._path(run_id)
        if not path.exists():
            raise UnknownRunError(f"no run {run_id!r} in {self.directory}")
        import json as _json
        return _json.loads(path.read_text(encoding="utf-8"))

    def rerun(self, run_id: str) -> PipelineRun:
        """Re-execute a persisted run from its stored inputs.

        The original creation timestamp is preserved, so exports of the
        replay are byte-identical to exports of the original run.
        """
        doc = self.load_document(run_id)
        payload = doc["payload"]
        criteria = pio.parse_criteria(payload["criteria"])
        matrix_obj = payload["matrix"]
        matrix = pio.parse_matrix_json(pio.canonical_json(matrix_obj), criteria)
        surveys = ([pio.parse_survey(s) for s in payload["surveys"]]
                   if payload["surveys"] else None)
        weights = (pio.parse_weights(payload["weights"])
                   if payload["weights"] else None)
        run = run_pipeline(criteria, matrix, surveys=surveys, weights=weights,
                           input_names={r["kind"]: r["name"]
                                        for r in doc["inputs"]},
                           created_at=doc["created_at"])
        if run.run_id != run_id:
            raise UnknownRunError(
                f"stored inputs for {run_id!r} hash to {run.run_id!r}; "
                "the document was tampered with")
        return run

    def list_runs(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))
