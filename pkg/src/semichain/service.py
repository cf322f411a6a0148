"""HTTP session service.

Thin JSON layer over :class:`~semichain.arena.GameSession`: every mutation
goes through the same referee path as automated play, so a client cannot
bypass validation.  Sessions live in memory only; transcripts are the
durable artifact.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .arena import GameConfig, GameSession
from .errors import SemichainError
from .spoiler import game_value


class CreateSession(BaseModel):
    mode: str = "up_growing"
    w: int = Field(ge=1)
    human_role: str = "none"
    spoiler: str = "golden"
    algorithm: str = "alg"
    seed: int = 0
    n_points: Optional[int] = None


class AssignBody(BaseModel):
    chain: Union[int, str]


class PresentBody(BaseModel):
    down: list[int] = Field(default_factory=list)
    up: list[int] = Field(default_factory=list)


class _Sessions:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, tuple[GameSession, threading.Lock]] = {}

    def add(self, session: GameSession) -> str:
        sid = uuid.uuid4().hex[:12]
        with self._lock:
            self._sessions[sid] = (session, threading.Lock())
        return sid

    def get(self, sid: str) -> tuple[GameSession, threading.Lock]:
        with self._lock:
            entry = self._sessions.get(sid)
        if entry is None:
            raise KeyError(sid)
        return entry


def _state(session: GameSession) -> dict:
    pending = session.pending_point
    return {
        "config": session.config.to_json_obj(),
        "human_role": session.human_role,
        "events": [e.to_json_obj() for e in session.events],
        "chains_used": session.chains_used,
        "bound": session.bound,
        "next_actor": session.next_actor,
        "outcome": session.outcome,
        "pending_point": pending,
        "valid_chains": (
            session.partition.valid_chains(session.order, pending)
            if pending is not None
            else []
        ),
        "maximal_points": sorted(session.order.maximal_points()),
        "width": session.order.width(),
    }


def _error(exc: SemichainError, status: int = 400) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"code": exc.code, "message": str(exc)}
    )


def create_app(ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="semichain", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions = _Sessions()

    @app.exception_handler(SemichainError)
    async def _handle_engine_error(_, exc: SemichainError):
        return _error(exc)

    @app.exception_handler(KeyError)
    async def _handle_missing(_, exc: KeyError):
        return JSONResponse(
            status_code=404,
            content={"code": "not_found", "message": f"no session {exc.args[0]!r}"},
        )

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSession):
        config = GameConfig(
            mode=body.mode,
            w=body.w,
            spoiler=body.spoiler,
            algorithm=body.algorithm,
            seed=body.seed,
            n_points=body.n_points,
        )
        session = GameSession(config, human_role=body.human_role)
        sid = sessions.add(session)
        return {"id": sid, "state": _state(session)}

    @app.get("/api/sessions/{sid}")
    def get_session(sid: str):
        session, _ = sessions.get(sid)
        return _state(session)

    @app.post("/api/sessions/{sid}/step")
    def step(sid: str):
        session, lock = sessions.get(sid)
        with lock:
            moved = session.step()
        state = _state(session)
        state["moved"] = moved
        return state

    @app.post("/api/sessions/{sid}/assign")
    def assign(sid: str, body: AssignBody):
        session, lock = sessions.get(sid)
        choice: Optional[int]
        if isinstance(body.chain, str):
            if body.chain != "new":
                from .errors import InvalidChain

                raise InvalidChain(f"chain must be an id or 'new', got {body.chain!r}")
            choice = None
        else:
            choice = body.chain
        with lock:
            session.human_assign(choice)
        return _state(session)

    @app.post("/api/sessions/{sid}/present")
    def present(sid: str, body: PresentBody):
        session, lock = sessions.get(sid)
        with lock:
            session.human_present(body.down, body.up)
        return _state(session)

    @app.post("/api/sessions/{sid}/stop")
    def stop(sid: str):
        session, lock = sessions.get(sid)
        with lock:
            session.stop()
        return _state(session)

    @app.get("/api/sessions/{sid}/intervals")
    def intervals(sid: str):
        session, lock = sessions.get(sid)
        with lock:
            rep = session.order.interval_representation()
        return {
            "left_endpoints": [
                {"id": i, "num": f.numerator, "den": f.denominator}
                for i, f in enumerate(rep.left)
            ]
        }

    @app.get("/api/value/{w}")
    def value(w: int):
        return {"w": w, "value": game_value(w)}

    static = Path(ui_dir) if ui_dir else Path("frontend/dist")
    if static.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static), html=True), name="ui")

    return app
