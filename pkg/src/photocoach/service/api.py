"""JSON-over-HTTP API.

Every response body carries schema_version; errors are
{schema_version, code, message} with conventional status codes. The
scoring checkpoint is loaded once at startup and never mutated, so
concurrent scoring is safe; store writes serialize inside PhotoStore.
"""

from __future__ import annotations

import base64
import binascii
import os
from datetime import date
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..errors import DecodeError, ImageTooSmallError, PhotoCoachError
from ..guidance import analyze_frame, suggestions_from_scores
from ..imagecore import decode_image
from ..model import AestheticScores, ATTRIBUTES, NetworkConfig, ScoringNetwork, display_score, forward_score
from .auth import AuthRequiredError, BadCredentialsError, TokenManager, hash_password, verify_password
from .store import (
    Clock,
    DuplicateNameError,
    DuplicatePhotoError,
    PhotoRecord,
    PhotoStore,
    UnknownPhotoError,
    UnknownUserError,
    utc_now,
)

SCHEMA_VERSION = 1


class ForbiddenError(PhotoCoachError):
    """Authenticated, but not allowed to touch this resource."""


class BadQueryError(PhotoCoachError):
    """Malformed query parameter (date, limit)."""


_ERROR_STATUS: list[tuple[type, int, str]] = [
    (DuplicateNameError, 409, "duplicate_name"),
    (DuplicatePhotoError, 409, "duplicate_photo"),
    (BadCredentialsError, 401, "bad_credentials"),
    (AuthRequiredError, 401, "unauthenticated"),
    (ForbiddenError, 403, "forbidden"),
    (UnknownPhotoError, 404, "not_found"),
    (UnknownUserError, 404, "not_found"),
    (ImageTooSmallError, 400, "too_small"),
    (DecodeError, 400, "undecodable"),
    (BadQueryError, 400, "bad_query"),
]


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"schema_version": SCHEMA_VERSION, "code": code, "message": message},
    )


class UserBody(BaseModel):
    name: str = Field(min_length=1)
    password: str = Field(min_length=1)


def _scores_json(scores: AestheticScores) -> dict:
    return {
        "overall": scores.overall,
        "attributes": {k: scores.attributes[k] for k in ATTRIBUTES},
        "display": {
            "overall": display_score(scores.overall),
            "attributes": {k: display_score(scores.attributes[k]) for k in ATTRIBUTES},
        },
    }


def _photo_json(record: PhotoRecord, owner_name: str) -> dict:
    return {
        "photo_id": record.photo_id,
        "owner": record.owner,
        "owner_name": owner_name,
        "uploaded_at": record.uploaded_at.isoformat(),
        "day_bucket": record.day_bucket,
        "scores": _scores_json(record.scores),
        "suggestions": list(record.suggestions),
    }


async def _read_image_bytes(request: Request) -> bytes:
    """Accept either multipart with an 'image' file field or JSON with
    an image_base64 string."""
    content_type = request.headers.get("content-type", "")
    if content_type.startswith("multipart/form-data"):
        form = await request.form()
        upload = form.get("image")
        if upload is None or isinstance(upload, str):
            raise DecodeError("multipart body needs an 'image' file field")
        return await upload.read()
    try:
        body = await request.json()
    except ValueError as exc:
        raise DecodeError("body must be JSON with image_base64, or multipart") from exc
    if not isinstance(body, dict) or not body.get("image_base64"):
        raise DecodeError("missing image_base64 field")
    try:
        return base64.b64decode(body["image_base64"], validate=True)
    except (binascii.Error, ValueError) as exc:
        raise DecodeError("invalid base64 image payload") from exc


def create_app(store_dir: str | Path, *, model: ScoringNetwork | None = None,
               checkpoint: str | Path | None = None, clock: Clock = utc_now) -> FastAPI:
    """Build the service with injectable store path, model, and clock."""
    if model is None:
        model = ScoringNetwork.load(checkpoint) if checkpoint else ScoringNetwork(NetworkConfig())
    store = PhotoStore(store_dir, clock=clock)
    tokens = TokenManager(clock=clock)

    app = FastAPI(title="photocoach", docs_url=None, redoc_url=None)
    # the page is typically served from a different origin than the API
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    app.state.store = store
    app.state.model = model
    app.state.tokens = tokens

    @app.exception_handler(PhotoCoachError)
    async def _domain_error(_request: Request, exc: PhotoCoachError):
        for etype, status, code in _ERROR_STATUS:
            if isinstance(exc, etype):
                return _error_response(status, code, str(exc))
        return _error_response(400, "bad_request", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return _error_response(422, "validation_error", str(exc))

    def _authed_user(request: Request) -> str:
        header = request.headers.get("authorization", "")
        token = header[7:].strip() if header.lower().startswith("bearer ") else None
        return tokens.resolve(token)

    @app.get("/api/health")
    async def health():
        return {"schema_version": SCHEMA_VERSION, "status": "ok"}

    @app.post("/api/users", status_code=201)
    async def create_user(body: UserBody):
        user = store.add_user(body.name, hash_password(body.password))
        return {
            "schema_version": SCHEMA_VERSION,
            "user_id": user.user_id,
            "name": user.name,
            "created_at": user.created_at.isoformat(),
        }

    @app.post("/api/sessions")
    async def login(body: UserBody):
        user = store.user_by_name(body.name)
        if user is None or not verify_password(body.password, user.password_hash):
            raise BadCredentialsError("unknown name or wrong password")
        token, expires_at = tokens.issue(user.user_id)
        return {
            "schema_version": SCHEMA_VERSION,
            "token": token,
            "user_id": user.user_id,
            "expires_at": expires_at.isoformat(),
        }

    @app.post("/api/photos")
    async def upload_photo(request: Request):
        user_id = _authed_user(request)
        image_bytes = await _read_image_bytes(request)
        img = decode_image(image_bytes)
        model.check_input_size(img)
        scores = forward_score(img, model)
        suggestion_ids = [p.token for p in suggestions_from_scores(scores)]
        record, created = store.add_photo(user_id, image_bytes, scores, suggestion_ids)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "created": created,
            **_photo_json(record, store.user_by_id(record.owner).name),
        }
        return JSONResponse(status_code=201 if created else 200, content=payload)

    @app.get("/api/photos/{photo_id}")
    async def get_photo(photo_id: str):
        record = store.get_photo(photo_id)
        return {
            "schema_version": SCHEMA_VERSION,
            **_photo_json(record, store.user_by_id(record.owner).name),
        }

    @app.get("/api/rankings/daily")
    async def daily_ranking(raw: str = Query("", alias="date")):
        if not raw:
            raise BadQueryError("date=YYYY-MM-DD is required")
        try:
            day = date.fromisoformat(raw)
        except ValueError as exc:
            raise BadQueryError(f"malformed date {raw!r}") from exc
        entries = store.ranking_entries(store.photos_for_day(day))
        return {"schema_version": SCHEMA_VERSION, "date": raw, "entries": entries}

    @app.get("/api/recommendations")
    async def recommendations(limit: int = 10):
        if limit < 1:
            raise BadQueryError("limit must be >= 1")
        entries = store.ranking_entries(store.top_photos(limit))
        return {"schema_version": SCHEMA_VERSION, "entries": entries}

    @app.get("/api/users/{user_id}/history")
    async def user_history(user_id: str, request: Request):
        requester = _authed_user(request)
        if requester != user_id:
            raise ForbiddenError("history is private to its owner")
        records = store.user_photos(user_id)
        owner_name = store.user_by_id(user_id).name
        return {
            "schema_version": SCHEMA_VERSION,
            "user_id": user_id,
            "photos": [_photo_json(r, owner_name) for r in records],
        }

    @app.post("/api/guidance")
    async def guidance(request: Request, score: bool = False):
        image_bytes = await _read_image_bytes(request)
        img = decode_image(image_bytes)
        analysis = analyze_frame(img)
        payload: dict = {
            "schema_version": SCHEMA_VERSION,
            "prompts": [p.to_dict() for p in analysis.prompts],
            "verdict": None,
            "subject": None,
        }
        if analysis.verdict is not None:
            payload["verdict"] = {
                "scores": analysis.verdict.scores,
                "best": analysis.verdict.best.value if analysis.verdict.best else None,
                "matched": analysis.verdict.matched,
            }
        if analysis.subject is not None:
            payload["subject"] = {
                "bbox": list(analysis.subject.bbox),
                "centroid": list(analysis.subject.centroid),
                "area_frac": analysis.subject.area_frac,
            }
        if score:
            model.check_input_size(img)
            payload["scores"] = _scores_json(forward_score(img, model))
        return payload

    return app


def build_app_from_env() -> FastAPI:
    """Uvicorn factory: store dir and checkpoint come from the environment."""
    store_dir = os.environ.get("PHOTOCOACH_STORE", "./photocoach-store")
    checkpoint = os.environ.get("PHOTOCOACH_CHECKPOINT") or None
    return create_app(store_dir, checkpoint=checkpoint)
