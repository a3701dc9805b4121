"""HTTP/JSON API over the record store.

Single-teacher deployment: one log file, implicit student creation on first
record, writes serialized per process.  All numbers returned here are read
straight out of the engine; clients are expected to render them untouched.
"""
from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .engine import Indicator, LAST_DAY, OutOfOrderError, day_of
from .store import EvalStore, StudentRoster


class EvaluationIn(BaseModel):
    """Body of POST /students/{id}/evaluations.

    The day may be given directly or as (month, day_of_month); the value is
    a crisp score or one of the four term labels.
    """

    indicator: str
    value: float | str
    day: int | None = None
    month: str | None = None
    day_of_month: int | None = None
    note: str = Field(default="", max_length=2000)

    def resolve_day(self) -> int:
        if self.day is not None:
            if self.month is not None or self.day_of_month is not None:
                raise ValueError("give either day or (month, day_of_month), not both")
            return self.day
        if self.month is None or self.day_of_month is None:
            raise ValueError("either day or both month and day_of_month are required")
        return day_of(self.month, self.day_of_month)


def _status_doc(store: EvalStore, student_id: str) -> dict:
    state = store.state(student_id)
    if state is None:
        raise HTTPException(status_code=404, detail=f"unknown student {student_id!r}")
    engine = store.engine
    final = None
    if state.final is not None:
        crisp, term = engine.final_out(state)
        final = {"value": crisp, "term": term.name}
    return {
        "student_id": student_id,
        "indicators": {ind.value: engine.indicator_status(state, ind) for ind in Indicator},
        "chain": {f"y{k + 1}": v for k, v in enumerate(state.chain)},
        "final": final,
        "record_count": state.record_count,
        "last_update_day": state.last_update_day,
    }


def create_app(store: EvalStore, roster: StudentRoster | None = None) -> FastAPI:
    app = FastAPI(title="fdes evaluation service")
    # the dashboard is static files on another origin; single-teacher
    # deployment, no credentials, so a blanket allowance is fine
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    write_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def body_errors(_: Request, exc: RequestValidationError) -> JSONResponse:
        fields = {
            ".".join(str(p) for p in err["loc"] if p != "body"): err["msg"]
            for err in exc.errors()
        }
        return JSONResponse(status_code=400, content={"detail": fields})

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "students": len(store.students())}

    @app.post("/students/{student_id}/evaluations", status_code=201)
    def post_evaluation(student_id: str, body: EvaluationIn) -> dict:
        try:
            day = body.resolve_day()
            rec = store.engine.make_record(student_id, body.indicator, day, body.value, body.note)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        try:
            with write_lock:
                seq, _ = store.append(rec)
        except OutOfOrderError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        doc = _status_doc(store, student_id)
        doc.update({"seq": seq, "clamped": rec.clamped, "applied_value": rec.value})
        return doc

    @app.get("/students/{student_id}/status")
    def get_status(student_id: str) -> dict:
        return _status_doc(store, student_id)

    @app.get("/students/{student_id}/timeline")
    def get_timeline(student_id: str, from_day: int = 1, to_day: int = LAST_DAY) -> dict:
        if not 1 <= from_day <= to_day <= LAST_DAY:
            raise HTTPException(
                status_code=400,
                detail=f"need 1 <= from_day <= to_day <= {LAST_DAY}",
            )
        try:
            rows = store.timeline(student_id, from_day, to_day)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown student {student_id!r}") from None
        return {"student_id": student_id, "days": rows}

    @app.get("/students/{student_id}/report")
    def get_report(student_id: str) -> dict:
        state = store.state(student_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown student {student_id!r}")
        doc = store.engine.report(state, student_id)
        if roster is not None:
            doc["student_name"] = roster.display_name(student_id)
            doc["course"] = roster.course(student_id)
        return doc

    return app
