"""HTTP service exposing the live learn-project loop to interactive clients.

One corpus is loaded at startup; clients open sessions against it, post
batches of document drags, and poll state. Each accepted interaction
re-learns weights from the cumulative pinned set and re-projects, bumping a
per-session revision. Within a session writers are serialized; readers see
immutable snapshots, never a half-applied update.
"""
from __future__ import annotations

import argparse
import logging
import sys
import threading
import uuid
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .corpus import Corpus, load_jsonl, tokenize_corpus
from .featurize import (
    EMBEDDING_AVERAGE,
    FEATURE_MODES,
    KEYWORD_HASHED,
    EmbeddingTable,
    FeatureMatrix,
    embed_average,
    hash_token,
    load_embedding_table,
    tfidf_hashed,
)
from .metric import WeightVector
from .wmds import InteractionBatch, Layout2D, Move, forward_project, invert_weights

logger = logging.getLogger(__name__)

TOP_WEIGHT_COUNT = 10
_TOKENS_PER_BUCKET = 3
DEFAULT_CORPUS_NAME = "corpus"


class ApiError(Exception):
    """Error carrying the HTTP status and the {code, message} payload."""

    def __init__(self, status: int, code: str, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class MoveIn(BaseModel):
    doc_id: str
    x: float
    y: float


class CreateSessionRequest(BaseModel):
    feature_mode: str
    corpus: str | None = None


class InteractionRequest(BaseModel):
    moves: list[MoveIn]


class ReleaseRequest(BaseModel):
    doc_ids: list[str]


@dataclass(frozen=True)
class _Snapshot:
    """One immutable, internally consistent view of a session."""

    weights: WeightVector
    layout: Layout2D
    pinned: tuple[tuple[str, tuple[float, float]], ...]
    revision: int


class SessionState:
    """Live session: snapshot reference swapped atomically under a writer lock."""

    def __init__(
        self, session_id: str, feature_mode: str, features: FeatureMatrix, snapshot: _Snapshot
    ) -> None:
        self.id = session_id
        self.feature_mode = feature_mode
        self.features = features
        self.initial = snapshot
        self.snapshot = snapshot
        self.lock = threading.Lock()


def _bucket_token_map(corpus: Corpus, dims: int) -> dict[int, list[str]]:
    """Most frequent corpus tokens per hash bucket, for weight readability."""
    counts: Counter[str] = Counter()
    for doc in corpus.documents:
        counts.update(doc.tokens)
    per_bucket: dict[int, list[tuple[int, str]]] = {}
    for token, count in counts.items():
        bucket, _ = hash_token(token, dims)
        per_bucket.setdefault(bucket, []).append((-count, token))
    return {
        bucket: [tok for _, tok in sorted(entries)[:_TOKENS_PER_BUCKET]]
        for bucket, entries in per_bucket.items()
    }


class ModelService:
    """All model state behind the HTTP layer: corpus, features, sessions."""

    def __init__(
        self,
        corpus: Corpus,
        embeddings: EmbeddingTable | None = None,
        corpus_name: str = DEFAULT_CORPUS_NAME,
        dims: int = 300,
    ) -> None:
        self.corpus = corpus if corpus.is_tokenized() else tokenize_corpus(corpus)
        self.embeddings = embeddings
        self.corpus_name = corpus_name
        self.dims = dims
        self._docs = {d.id: d for d in self.corpus.documents}
        self._features: dict[str, FeatureMatrix] = {}
        self._bucket_tokens: dict[int, list[str]] | None = None
        self._sessions: dict[str, SessionState] = {}
        self._registry_lock = threading.Lock()

    def _features_for(self, mode: str) -> FeatureMatrix:
        if mode not in self._features:
            if mode == KEYWORD_HASHED:
                self._features[mode] = tfidf_hashed(self.corpus, dims=self.dims)
            else:
                assert self.embeddings is not None
                features, all_oov = embed_average(self.corpus, self.embeddings)
                if all_oov:
                    logger.warning("%d documents had no in-vocabulary tokens", len(all_oov))
                self._features[mode] = features
        return self._features[mode]

    def _top_weights(self, session: SessionState, weights: WeightVector) -> dict:
        values = weights.values
        count = min(TOP_WEIGHT_COUNT, values.size)
        order = sorted(range(values.size), key=lambda i: (-values[i], i))[:count]
        entries = []
        keyword = session.feature_mode == KEYWORD_HASHED
        if keyword and self._bucket_tokens is None:
            self._bucket_tokens = _bucket_token_map(self.corpus, session.features.dims)
        for dim in order:
            entry: dict = {"dim": dim, "weight": float(values[dim])}
            if keyword:
                entry["tokens"] = (self._bucket_tokens or {}).get(dim, [])
            entries.append(entry)
        return {"entries": entries, "approximate": keyword}

    def create_session(self, feature_mode: str, corpus_ref: str | None) -> SessionState:
        if corpus_ref is not None and corpus_ref != self.corpus_name:
            raise ApiError(404, "unknown_corpus", f"no corpus named {corpus_ref!r} is loaded")
        if feature_mode not in FEATURE_MODES:
            raise ApiError(
                400,
                "invalid_feature_mode",
                f"feature_mode must be one of {sorted(FEATURE_MODES)}",
            )
        if feature_mode == EMBEDDING_AVERAGE and self.embeddings is None:
            raise ApiError(400, "embedding_table_unavailable", "embedding table unavailable")
        features = self._features_for(feature_mode)
        weights = WeightVector.uniform(features.dims)
        layout = forward_project(features, weights, seed=0)
        snapshot = _Snapshot(weights, layout, (), 0)
        session = SessionState(uuid.uuid4().hex, feature_mode, features, snapshot)
        with self._registry_lock:
            self._sessions[session.id] = session
        logger.info("session %s created (%s, %d docs)", session.id, feature_mode, len(features))
        return session

    def get_session(self, session_id: str) -> SessionState:
        session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return session

    def get_document(self, doc_id: str):
        doc = self._docs.get(doc_id)
        if doc is None:
            raise ApiError(404, "unknown_doc", f"no document {doc_id!r} in the corpus")
        return doc

    def apply_interaction(
        self, session: SessionState, moves: list[MoveIn], reg_lambda: float = 0.5
    ) -> _Snapshot:
        if not moves:
            raise ApiError(400, "empty_batch", "an interaction must move at least one document")
        try:
            batch = InteractionBatch([Move(m.doc_id, m.x, m.y) for m in moves])
        except ValueError as exc:
            raise ApiError(400, "invalid_move", str(exc)) from exc
        for move in batch.moves:
            if move.doc_id not in self._docs:
                raise ApiError(404, "unknown_doc", f"no document {move.doc_id!r} in the corpus")

        with session.lock:
            current = session.snapshot
            pinned = dict(current.pinned)
            for move in batch.moves:
                pinned[move.doc_id] = (move.x, move.y)
            if len(pinned) < 2:
                raise ApiError(
                    400, "too_few_pinned", "fewer than 2 pinned documents after this batch"
                )
            merged = tuple(pinned.items())
            if merged == current.pinned:
                # replaying an already-applied batch: re-optimizing from the
                # current weights would drift (the proximal anchor re-centers),
                # so an unchanged pinned set short-circuits to the same state
                new = _Snapshot(current.weights, current.layout, merged, current.revision + 1)
                session.snapshot = new
                return new
            weights = invert_weights(
                session.features, merged, current.weights, reg_lambda=reg_lambda
            )
            layout = forward_project(session.features, weights, init=current.layout)
            new = _Snapshot(weights, layout, merged, current.revision + 1)
            session.snapshot = new
            return new

    def release(self, session: SessionState, doc_ids: list[str]) -> _Snapshot:
        for doc_id in doc_ids:
            if doc_id not in self._docs:
                raise ApiError(404, "unknown_doc", f"no document {doc_id!r} in the corpus")
        with session.lock:
            current = session.snapshot
            remaining = tuple((i, p) for i, p in current.pinned if i not in set(doc_ids))
            new = _Snapshot(current.weights, current.layout, remaining, current.revision + 1)
            session.snapshot = new
            return new

    def reset(self, session: SessionState) -> _Snapshot:
        with session.lock:
            current = session.snapshot
            base = session.initial
            new = _Snapshot(base.weights, base.layout, (), current.revision + 1)
            session.snapshot = new
            return new


def _layout_payload(layout: Layout2D) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in layout.positions]


def _pinned_payload(snapshot: _Snapshot) -> list[dict]:
    return [{"doc_id": i, "x": p[0], "y": p[1]} for i, p in snapshot.pinned]


def create_app(
    corpus: Corpus,
    embeddings: EmbeddingTable | None = None,
    corpus_name: str = DEFAULT_CORPUS_NAME,
    dims: int = 300,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the FastAPI app around one loaded corpus."""
    service = ModelService(corpus, embeddings, corpus_name=corpus_name, dims=dims)
    app = FastAPI(title="docsteer", docs_url=None, redoc_url=None)
    app.state.service = service

    @app.exception_handler(ApiError)
    async def on_api_error(_: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"code": "invalid_request", "message": str(exc)}
        )

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(_: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = "not_found" if exc.status_code == 404 else "http_error"
        return JSONResponse(
            status_code=exc.status_code, content={"code": code, "message": str(exc.detail)}
        )

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest) -> dict:
        session = service.create_session(body.feature_mode, body.corpus)
        return {"session_id": session.id}

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str) -> dict:
        session = service.get_session(session_id)
        snapshot = session.snapshot
        docs = service.corpus.documents
        return {
            "session_id": session.id,
            "corpus": service.corpus_name,
            "feature_mode": session.feature_mode,
            "revision": snapshot.revision,
            "doc_ids": session.features.doc_ids,
            "labels": [d.label for d in docs],
            "layout": _layout_payload(snapshot.layout),
            "pinned": _pinned_payload(snapshot),
            "top_weights": service._top_weights(session, snapshot.weights),
            "dims": session.features.dims,
        }

    @app.post("/sessions/{session_id}/interactions")
    def post_interaction(session_id: str, body: InteractionRequest) -> dict:
        session = service.get_session(session_id)
        snapshot = service.apply_interaction(session, body.moves)
        return {
            "revision": snapshot.revision,
            "layout": _layout_payload(snapshot.layout),
            "top_weights": service._top_weights(session, snapshot.weights),
        }

    @app.post("/sessions/{session_id}/release")
    def post_release(session_id: str, body: ReleaseRequest) -> dict:
        session = service.get_session(session_id)
        snapshot = service.release(session, body.doc_ids)
        return {"revision": snapshot.revision, "pinned": _pinned_payload(snapshot)}

    @app.post("/sessions/{session_id}/reset")
    def post_reset(session_id: str) -> dict:
        session = service.get_session(session_id)
        snapshot = service.reset(session)
        return {
            "revision": snapshot.revision,
            "layout": _layout_payload(snapshot.layout),
            "top_weights": service._top_weights(session, snapshot.weights),
        }

    @app.get("/corpus/{doc_id}")
    def get_document(doc_id: str) -> dict:
        doc = service.get_document(doc_id)
        payload = {"id": doc.id, "text": doc.text}
        if doc.label is not None:
            payload["label"] = doc.label
        return payload

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    return app


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = argparse.ArgumentParser(prog="si-serve", description="Serve the steering API")
    parser.add_argument("--corpus", required=True, help="corpus JSONL file")
    parser.add_argument("--glove", help="word-vector text file enabling embedding mode")
    parser.add_argument("--dims", type=int, default=300, help="hashed feature dimensions")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--static", help="directory of UI assets to serve at /")
    args = parser.parse_args(argv)

    try:
        corpus = tokenize_corpus(load_jsonl(args.corpus))
        embeddings = load_embedding_table(args.glove, dims=None) if args.glove else None
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    app = create_app(
        corpus,
        embeddings,
        corpus_name=Path(args.corpus).stem,
        dims=args.dims,
        static_dir=args.static,
    )
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
