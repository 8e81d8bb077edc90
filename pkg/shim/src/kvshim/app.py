"""HTTP surface: POST /parse, POST /answer, GET /health.

Stateless request handling over read-only backend objects; safe for
concurrent requests. Returns 400 on empty/missing fields and 503 while
backends are still loading.
"""

from __future__ import annotations

from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from kvshim.backends import Backends, select_backends

MAX_TEXT_CHARS = 10_000


class ParseRequest(BaseModel):
    text: str | None = None


class AnswerRequest(BaseModel):
    question: str | None = None
    context: str | None = None


def create_app(backends: Backends | None = None) -> FastAPI:
    state = {"backends": backends, "loading": backends is None}

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        if state["backends"] is None:
            state["backends"] = select_backends()
        state["loading"] = False
        yield

    app = FastAPI(title="kvshim", version="0.1.0", lifespan=lifespan)

    def _ready() -> Backends:
        if state["loading"] or state["backends"] is None:
            raise HTTPException(status_code=503, detail="models are loading")
        return state["backends"]

    @app.get("/health")
    def health() -> dict:
        loaded = state["backends"]
        return {
            "status": "loading" if state["loading"] or loaded is None else "ok",
            "parser_model": loaded.parser_model if loaded else None,
            "ner_model": loaded.ner_model if loaded else None,
            "qa_model": loaded.qa_model if loaded else None,
        }

    @app.post("/parse")
    def parse(request: ParseRequest) -> dict:
        backend = _ready()
        if not request.text:
            raise HTTPException(status_code=400, detail="text must be non-empty")
        if len(request.text) > MAX_TEXT_CHARS:
            raise HTTPException(status_code=400,
                                detail=f"text exceeds {MAX_TEXT_CHARS} characters")
        return backend.parser.parse(request.text)

    @app.post("/answer")
    def answer(request: AnswerRequest) -> dict:
        backend = _ready()
        if not request.question or not request.context:
            raise HTTPException(status_code=400,
                                detail="question and context must be non-empty")
        return backend.qa.answer(request.question, request.context)

    return app
