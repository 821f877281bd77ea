"""HTTP front-end: session-scoped survey elicitation with live weight
feedback, matrix upload, ranking, and sensitivity scans.

Sessions are in-memory; the service is a thin stateful shell around the
pure computation modules, not a system of record. Every error leaves the
service as a structured ``{code, message, detail}`` body.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import io as pio
from .bwm import solve_bwm, with_consistency
from .criteria import CriterionSet, elicitation_slots
from .errors import DomainError, UnknownSessionError
from .matrix import DecisionMatrix
from .pipeline import ranking_to_obj, run_pipeline, sensitivity_scan, sensitivity_to_obj
from .survey import ComparisonSurvey
from .weights import WeightVector, aggregate_weights


class CriterionIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: str
    name: str
    sense: str


class SessionIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    criteria: list[CriterionIn]


class SurveyIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    best: int
    worst: int
    bo: list[float]
    ow: list[float]


class MatrixIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    alternatives: list[str]
    stage: str
    values: list[list[float]]
    criteria_ref: Optional[list[str]] = None


class RankIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    weights: Optional[list[float]] = None


class SensitivityIn(BaseModel):
    model_config = ConfigDict(extra="forbid")
    criterion: str
    deltas: list[float]


@dataclass
class Session:
    session_id: str
    criteria: CriterionSet
    surveys: dict[str, ComparisonSurvey] = field(default_factory=dict)
    matrix: DecisionMatrix | None = None
    last_result: "tuple[WeightVector, object] | None" = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _survey_feedback(survey: ComparisonSurvey) -> dict:
    solution = with_consistency(solve_bwm(survey), survey)
    return {
        "respondent": survey.respondent,
        **pio.weights_to_obj(solution.weights),
    }


def create_app(ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="bwmtopsis decision service", docs_url=None,
                  redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        return session

    @app.exception_handler(DomainError)
    def domain_error_handler(request: Request, exc: DomainError):
        status = 404 if isinstance(exc, UnknownSessionError) else 400
        return JSONResponse(status_code=status, content={
            "code": exc.code, "message": str(exc), "detail": exc.detail(),
        })

    @app.exception_handler(RequestValidationError)
    def schema_error_handler(request: Request, exc: RequestValidationError):
        errors = [
            {k: str(v) if k == "msg" else v
             for k, v in err.items() if k in ("type", "loc", "msg")}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=422, content={
            "code": "ValidationFailed",
            "message": "request body does not match the schema",
            "detail": {"errors": errors},
        })

    @app.exception_handler(Exception)
    def internal_error_handler(request: Request, exc: Exception):
        return JSONResponse(status_code=500, content={
            "code": "InternalError", "message": str(exc), "detail": {},
        })

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionIn):
        criteria = pio.parse_criteria(
            [c.model_dump() for c in body.criteria], source="request body")
        with registry_lock:
            session_id = f"s{next(counter):04d}"
            sessions[session_id] = Session(session_id, criteria)
        return {
            "session_id": session_id,
            "n_criteria": criteria.n,
            "free_comparisons": elicitation_slots(criteria.n),
        }

    @app.get("/sessions/{session_id}")
    def session_info(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return {
                "session_id": session.session_id,
                "criteria": pio.criteria_to_obj(session.criteria),
                "respondents": sorted(session.surveys),
                "has_matrix": session.matrix is not None,
                "has_result": session.last_result is not None,
            }

    @app.put("/sessions/{session_id}/surveys/{respondent}")
    def upsert_survey(session_id: str, respondent: str, body: SurveyIn):
        session = get_session(session_id)
        survey = ComparisonSurvey(respondent=respondent, best=body.best,
                                  worst=body.worst, bo=tuple(body.bo),
                                  ow=tuple(body.ow))
        from .survey import validate_survey
        validate_survey(survey, session.criteria.n)
        feedback = _survey_feedback(survey)
        with session.lock:
            session.surveys[respondent] = survey
        return feedback

    @app.get("/sessions/{session_id}/weights")
    def aggregated_weights(session_id: str):
        session = get_session(session_id)
        with session.lock:
            surveys = [session.surveys[k] for k in sorted(session.surveys)]
        if not surveys:
            raise DomainError("no surveys in this session yet")
        vectors = [with_consistency(solve_bwm(s), s).weights for s in surveys]
        aggregated = aggregate_weights(vectors)
        return {
            "aggregated": pio.weights_to_obj(aggregated),
            "respondents": [
                {"respondent": s.respondent, **pio.weights_to_obj(v)}
                for s, v in zip(surveys, vectors)
            ],
        }

    @app.put("/sessions/{session_id}/matrix")
    def put_matrix(session_id: str, body: MatrixIn):
        session = get_session(session_id)
        matrix = pio.parse_matrix_json(body.model_dump(exclude_none=True),
                                       session.criteria,
                                       source="request body")
        with session.lock:
            session.matrix = matrix
        return {
            "ok": True,
            "alternatives": len(matrix.alternatives),
            "stage": matrix.stage.value,
        }

    @app.post("/sessions/{session_id}/rank")
    def rank(session_id: str, body: RankIn | None = None):
        session = get_session(session_id)
        with session.lock:
            matrix = session.matrix
            surveys = [session.surveys[k] for k in sorted(session.surveys)]
        if matrix is None:
            raise DomainError("load a matrix before ranking")
        explicit = None
        if body is not None and body.weights is not None:
            try:
                explicit = WeightVector(tuple(body.weights))
            except ValueError as exc:
                raise DomainError(f"bad weight vector: {exc}")
        run = run_pipeline(session.criteria, matrix,
                           surveys=surveys if explicit is None else None,
                           weights=explicit)
        with session.lock:
            session.last_result = (run.weights, run.ranking)
        return {
            "weights": pio.weights_to_obj(run.weights),
            "ranking": ranking_to_obj(run.ranking),
        }

    @app.post("/sessions/{session_id}/sensitivity")
    def sensitivity(session_id: str, body: SensitivityIn):
        session = get_session(session_id)
        with session.lock:
            matrix = session.matrix
            weights = session.last_result[0] if session.last_result else None
            surveys = [session.surveys[k] for k in sorted(session.surveys)]
        if matrix is None:
            raise DomainError("load a matrix before a sensitivity scan")
        if weights is None and not surveys:
            raise DomainError("rank first (or add surveys) so weights exist")
        run = run_pipeline(session.criteria, matrix,
                           surveys=surveys if weights is None else None,
                           weights=weights)
        report = sensitivity_scan(run, body.criterion, body.deltas)
        return sensitivity_to_obj(report)

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True),
                  name="ui")

    return app
