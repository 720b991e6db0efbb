"""HTTP wire protocol for hybrid editing sessions.

Sessions live in memory and are evicted after an idle TTL. Mutating requests
may carry expected_revision; a mismatch is answered with 409 and changes
nothing, which keeps one-writer-per-session true across the network.
"""

import os
import threading
import time

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ConfigDict

from . import engine
from .adapter import palette_json
from .blocks import MarkupKind, layout, to_markup
from .diagnostics import SourceError
from .interpreter import DEFAULT_STEP_LIMIT, ExecError, run
from .lang import parse

DEFAULT_TTL_SECONDS = 30 * 60


class SessionStore:
    """In-memory session registry with lazy idle eviction."""

    def __init__(self, ttl_seconds: float | None = None, clock=time.monotonic):
        if ttl_seconds is None:
            ttl_seconds = float(os.environ.get("HYBRID_SESSION_TTL", DEFAULT_TTL_SECONDS))
        self.ttl = ttl_seconds
        self.clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, engine.Session] = {}
        self._last_access: dict[str, float] = {}

    def _sweep(self, now: float):
        expired = [sid for sid, at in self._last_access.items() if now - at > self.ttl]
        for sid in expired:
            self._sessions.pop(sid, None)
            self._last_access.pop(sid, None)

    def add(self, session: engine.Session):
        with self._lock:
            now = self.clock()
            self._sweep(now)
            self._sessions[session.id] = session
            self._last_access[session.id] = now

    def get(self, session_id: str) -> engine.Session:
        with self._lock:
            now = self.clock()
            self._sweep(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
            self._last_access[session_id] = now
            return session


class CreateSessionBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    text: str = ""


class DropBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    palette_id: str
    line: int
    expected_revision: int | None = None


class EditRange(BaseModel):
    model_config = ConfigDict(extra="forbid")
    start_line: int
    start_col: int
    end_line: int
    end_col: int


class EditBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    range: EditRange
    replacement: str
    expected_revision: int | None = None


class RunBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    step_limit: int = DEFAULT_STEP_LIMIT


def _diag_payload(diag) -> dict:
    return {
        "severity": diag.severity,
        "code": diag.code,
        "message": diag.message,
        "line": diag.line,
        "col": diag.col,
    }


def _state_payload(session: engine.Session) -> dict:
    snap = engine.snapshot(session)
    block_types = {}
    for token in snap.blocks.tokens:
        if token.kind is MarkupKind.BLOCK_START:
            block_types[token.attr("id")] = token.attr("type")
    return {
        "id": session.id,
        "revision": snap.revision,
        "text": snap.text,
        "stale": snap.stale,
        "diagnostics": [_diag_payload(d) for d in snap.diagnostics],
        "blocks": to_markup(snap.blocks),
        "block_types": block_types,
        "layout": [
            {
                "row": row.row_index,
                "depth": row.depth,
                "block_ids": list(row.block_ids),
                "leading_blank": row.leading_blank,
            }
            for row in layout(snap.blocks)
        ],
    }


def _check_revision(session: engine.Session, expected: int | None):
    if expected is not None and expected != session.revision:
        raise HTTPException(
            status_code=409,
            detail=f"expected revision {expected}, session is at {session.revision}",
        )


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="minipencil session service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    if store is None:
        store = SessionStore()
    app.state.store = store

    @app.get("/palette")
    def get_palette() -> list[dict]:
        return palette_json()

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict:
        session = engine.new_session(body.text)
        store.add(session)
        return {"id": session.id, "state": _state_payload(session)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _state_payload(store.get(session_id))

    @app.post("/sessions/{session_id}/drop")
    def drop(session_id: str, body: DropBody) -> dict:
        session = store.get(session_id)
        with session.lock:
            _check_revision(session, body.expected_revision)
            try:
                result = engine.drop_block(session, body.palette_id, body.line)
            except engine.EngineError as err:
                raise HTTPException(
                    status_code=422, detail={"code": err.code, "message": str(err)}
                ) from None
        payload = _state_payload(session)
        payload["changed_line_range"] = (
            list(result.changed_line_range) if result.changed_line_range else None
        )
        return payload

    @app.post("/sessions/{session_id}/edit")
    def edit(session_id: str, body: EditBody) -> dict:
        session = store.get(session_id)
        rng = body.range
        with session.lock:
            _check_revision(session, body.expected_revision)
            try:
                result = engine.edit_text(
                    session,
                    rng.start_line,
                    rng.start_col,
                    rng.end_line,
                    rng.end_col,
                    body.replacement,
                )
            except engine.EngineError as err:
                raise HTTPException(
                    status_code=422, detail={"code": err.code, "message": str(err)}
                ) from None
        payload = _state_payload(session)
        payload["changed_line_range"] = (
            list(result.changed_line_range) if result.changed_line_range else None
        )
        return payload

    @app.post("/sessions/{session_id}/run")
    def run_session(session_id: str, body: RunBody | None = None) -> dict:
        session = store.get(session_id)
        text, _, _, revision = engine.current_state(session)
        step_limit = body.step_limit if body is not None else DEFAULT_STEP_LIMIT
        try:
            program = parse(text)
        except SourceError as err:
            first = err.diagnostics[0]
            return {
                "revision": revision,
                "trace": None,
                "error": {"code": first.code, "message": first.message, "line": first.line},
            }
        try:
            trace = run(program, step_limit)
        except ExecError as err:
            diag = err.diagnostic
            return {
                "revision": revision,
                "trace": None,
                "error": {"code": diag.code, "message": diag.message, "line": diag.line},
            }
        return {"revision": revision, "trace": trace.to_json(), "error": None}

    return app


def serve(port: int, host: str = "127.0.0.1"):
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
