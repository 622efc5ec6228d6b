"""HTTP surface: JSON envelopes over the shared handlers.

All responses are {"ok": true, "data": ...} or {"ok": false, "error":
{code, message, ...}}, serialized with the same canonical JSON writer the
CLI uses. Decision endpoints persist a snapshot before acknowledging.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response

from .config import AppConfig
from .datasource import fetch_dataset
from .errors import EpidssError, InvalidRequestError
from .handlers import (
    AppState,
    execute,
    handle_allocate,
    handle_forecast,
    handle_ingest,
    handle_lockdown,
    handle_regions,
)
from .snapshots import SnapshotStore, canonical_json


def envelope_ok(data) -> dict:
    return {"ok": True, "data": data}


def envelope_error(error: EpidssError) -> dict:
    return {"ok": False, "error": error.to_payload()}


def _json_response(payload: dict, status: int = 200) -> Response:
    return Response(content=canonical_json(payload), status_code=status,
                    media_type="application/json")


def _snapshot(state: AppState, kind: str, request: dict, payload: dict) -> None:
    if state.store is not None:
        state.store.append(kind, request, payload, state.config.to_dict())


def build_state(config: AppConfig, with_store: bool = True) -> AppState:
    state = AppState(config=config)
    if with_store:
        state.store = SnapshotStore(config.snapshot_path)
    if config.data_source:
        state.dataset = fetch_dataset(config.data_source, config.schema)
    return state


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="epidss", docs_url=None, redoc_url=None)
    app.state.epidss = state

    @app.exception_handler(EpidssError)
    async def _engine_error(_request, exc: EpidssError):
        return _json_response(envelope_error(exc), status=exc.http_status)

    @app.get("/regions")
    def regions():
        return _json_response(envelope_ok(handle_regions(state)))

    @app.get("/forecast")
    def forecast(region: str, kind: str = "active", horizon: int | None = None):
        request = {"region": region, "kind": kind}
        if horizon is not None:
            request["horizon"] = horizon
        data = handle_forecast(state, request)
        _snapshot(state, "forecast", request, data)
        return _json_response(envelope_ok(data))

    @app.post("/allocate")
    async def allocate(request: Request):
        body = await _read_json(request)
        data = handle_allocate(state, body)
        _snapshot(state, "allocation", body, data)
        return _json_response(envelope_ok(data))

    @app.post("/lockdown")
    async def lockdown(request: Request):
        body = await _read_json(request)
        data = handle_lockdown(state, body)
        _snapshot(state, "lockdown", body, data)
        return _json_response(envelope_ok(data))

    @app.get("/snapshots")
    def snapshots():
        if state.store is None:
            return _json_response(envelope_ok({"snapshots": []}))
        records = [s.to_record() for s in state.store.list()]
        return _json_response(envelope_ok({"snapshots": records}))

    @app.post("/ingest")
    async def ingest(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                raise InvalidRequestError("multipart field 'file' required",
                                          detail={"field": "file"})
            raw = await upload.read()
        else:
            raw = await request.body()
        if not raw:
            raise InvalidRequestError("empty upload", detail={"field": "file"})
        data = handle_ingest(state, raw)
        return _json_response(envelope_ok(data))

    return app


async def _read_json(request: Request) -> dict:
    try:
        body = json.loads(await request.body() or b"")
    except json.JSONDecodeError as exc:
        raise InvalidRequestError(f"request body is not valid JSON: {exc}")
    if not isinstance(body, dict):
        raise InvalidRequestError("request body must be a JSON object")
    return body


def replay_executor(state: AppState):
    """Adapter for snapshots.replay: (kind, request) -> fresh payload."""
    return lambda kind, request: execute(state, kind, request)
