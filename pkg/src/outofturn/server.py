"""HTTP/JSON session service and static UI host.

Sessions live in memory.  Requests to different sessions run in parallel;
requests to the same session serialize on a per-session lock.  Catalogs
and specs are loaded once at startup and never change afterwards.
"""

from __future__ import annotations

import argparse
import threading
from pathlib import Path

import uvicorn
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import (
    ConfirmationPending,
    DialogError,
    SessionComplete,
    StaleLink,
    UnknownDataset,
    UnknownSession,
    UnknownSpec,
)
from .session import Registry, Session, default_data_dir

_STATUS_CODES = {
    UnknownDataset.code: 404,
    UnknownSpec.code: 404,
    UnknownSession.code: 404,
    SessionComplete.code: 409,
    ConfirmationPending.code: 409,
    StaleLink.code: 400,
}


class CreateSessionBody(BaseModel):
    dataset: str
    spec: str


class ClickBody(BaseModel):
    slot: str
    value: str


class InputBody(BaseModel):
    say: str | None = None
    click: ClickBody | None = None


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def add(self, session: Session) -> None:
        with self._guard:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def lock_for(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._guard:
            if session_id not in self._sessions:
                raise UnknownSession(f"no session {session_id!r}")
            return self._sessions[session_id], self._locks[session_id]

    def remove(self, session_id: str) -> None:
        with self._guard:
            if session_id not in self._sessions:
                raise UnknownSession(f"no session {session_id!r}")
            del self._sessions[session_id]
            del self._locks[session_id]


def create_app(
    data_dir: str | Path | None = None,
    grammar_limit: int = 512,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    registry = Registry(data_dir or default_data_dir(), grammar_limit)
    store = SessionStore()
    app = FastAPI(title="outofturn", docs_url=None, redoc_url=None)

    @app.exception_handler(DialogError)
    async def dialog_error_handler(_request: Request, exc: DialogError):
        return JSONResponse(
            status_code=_STATUS_CODES.get(exc.code, 400),
            content={"error": exc.code, "detail": exc.detail},
        )

    @app.get("/datasets")
    def list_datasets():
        return {"pairs": registry.pairs()}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session = registry.create_session(body.dataset, body.spec)
        store.add(session)
        return {"session_id": session.id, "render_model": session.render_model()}

    @app.get("/sessions/{session_id}")
    def get_render_model(session_id: str):
        session, lock = store.lock_for(session_id)
        with lock:
            return session.render_model()

    @app.post("/sessions/{session_id}/input")
    def handle_input(session_id: str, body: InputBody):
        session, lock = store.lock_for(session_id)
        with lock:
            if body.say is not None:
                report, model = session.say(body.say)
            elif body.click is not None:
                report, model = session.click(body.click.slot, body.click.value)
            else:
                return JSONResponse(
                    status_code=400,
                    content={"error": "MalformedInput", "detail": "provide either say or click"},
                )
            return {"report": report.as_dict(), "render_model": model}

    @app.get("/sessions/{session_id}/grammar")
    def get_grammar(session_id: str):
        session, lock = store.lock_for(session_id)
        with lock:
            return session.grammar()

    @app.get("/sessions/{session_id}/help")
    def get_help(session_id: str):
        session, lock = store.lock_for(session_id)
        with lock:
            return session.help()

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        store.remove(session_id)

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path and ui_path.is_dir():
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    else:

        @app.get("/")
        def index():
            return JSONResponse(
                {"service": "outofturn", "hint": "no UI bundle configured; use the JSON API or the CLI"}
            )

    return app


def main(argv: list[str] | None = None) -> None:
    import os

    env = os.environ.get
    parser = argparse.ArgumentParser(prog="outofturn-server", description="Serve dialog sessions over HTTP.")
    parser.add_argument("--port", type=int, default=int(env("OUTOFTURN_PORT", "8040")), help="listen port")
    parser.add_argument("--host", default=env("OUTOFTURN_HOST", "127.0.0.1"), help="bind address")
    parser.add_argument(
        "--data", default=env("OUTOFTURN_DATA"), help="data directory with *.csv datasets and *.xml specs"
    )
    parser.add_argument(
        "--grammar-limit",
        type=int,
        default=int(env("OUTOFTURN_GRAMMAR_LIMIT", "512")),
        help="exact-grammar enumeration limit",
    )
    parser.add_argument("--ui-dir", default=env("OUTOFTURN_UI_DIR"), help="static UI bundle directory served at /")
    args = parser.parse_args(argv)
    ui_dir = args.ui_dir
    if ui_dir is None:
        bundled = Path.cwd() / "frontend" / "dist"
        ui_dir = bundled if bundled.is_dir() else None
    app = create_app(args.data, args.grammar_limit, ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
