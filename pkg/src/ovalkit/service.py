"""Local HTTP facade over the engine.

Stateless compute endpoints that return the exact same canonical JSON
bytes as the CLI for the same scenario.  Responses carry an ETag derived
from the request hash so clients can cache by full request.  Requests
whose estimated cost exceeds a threshold are parked as jobs: the endpoint
answers 202 with a job id and /api/job/{id} serves the result when done.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .errors import InvalidScenarioError, NumericalError, OvalkitError
from .scenario import Scenario, emit_json, run_scenario, validate_scenario

DEFAULT_PORT = 7878
MIN_SAMPLES, MAX_SAMPLES = 64, 8192

# crude cost model, calibrated on the reference crunode sweep:
# a singular query at 4000 samples costs roughly 1.5 s per distance
ASYNC_THRESHOLD_SECONDS = 1.0
_SINGULAR_UNIT_COST = 1.5


def estimated_cost_seconds(s: Scenario) -> float:
    base = 2e-6 * s.samples * max(len(s.d), 1)
    if s.contour:
        base += 0.4
    if s.singular:
        base += _SINGULAR_UNIT_COST * (s.samples / 4000.0) ** 2 * max(len(s.d), 1)
    return base


_BOOL_KEYS = ("singular", "envelope", "contour")
_FLOAT_KEYS = {"a", "b", "r"}


def _payload_from_query(params: dict) -> dict:
    curve: dict = {"kind": params.get("curve", "cayley")}
    for key in ("a", "b", "r", "name"):
        if key in params:
            curve[key] = float(params[key]) if key in _FLOAT_KEYS else params[key]
    payload: dict = {"curve": curve}
    if "d" in params:
        payload["d"] = [float(v) for v in str(params["d"]).split(",") if v != ""]
    if "side" in params:
        payload["side"] = params["side"]
    if "samples" in params:
        payload["samples"] = int(params["samples"])
    if "range" in params:
        lo, hi = str(params["range"]).replace(":", ",").split(",", 1)
        payload["t_range"] = [float(lo), float(hi)]
    for key in _BOOL_KEYS:
        if key in params:
            payload[key] = str(params[key]).lower() in ("1", "true", "yes")
    return payload


class _Jobs:
    def __init__(self):
        self._lock = threading.Lock()
        self._jobs: dict = {}

    def submit(self, job_id: str, scenario: Scenario) -> None:
        with self._lock:
            if job_id in self._jobs:
                return
            self._jobs[job_id] = {"status": "pending", "body": None}

        def work():
            try:
                body = emit_json(run_scenario(scenario)).encode()
                with self._lock:
                    self._jobs[job_id] = {"status": "done", "body": body}
            except Exception as exc:  # noqa: BLE001 - reported to the poller
                with self._lock:
                    self._jobs[job_id] = {"status": "error", "body": str(exc).encode()}

        threading.Thread(target=work, daemon=True).start()

    def get(self, job_id: str):
        with self._lock:
            return self._jobs.get(job_id)


def create_app(async_threshold: float = ASYNC_THRESHOLD_SECONDS) -> FastAPI:
    app = FastAPI(title="ovalkit explorer service")
    ui_origin = os.environ.get("OVALKIT_UI_ORIGIN", "http://localhost:8080")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[ui_origin],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    jobs = _Jobs()
    cache: dict = {}

    def compute(payload: dict, forced: dict, request: Request) -> Response:
        try:
            payload = dict(payload)
            payload.update(forced)
            if "samples" in payload:
                payload["samples"] = max(MIN_SAMPLES, min(MAX_SAMPLES, int(payload["samples"])))
            scenario = validate_scenario(payload)
        except InvalidScenarioError as exc:
            return Response(
                content=json.dumps({"error": {"field": exc.field, "message": exc.message}}),
                status_code=422,
                media_type="application/json",
            )
        except (TypeError, ValueError) as exc:
            return Response(
                content=json.dumps({"error": {"message": f"malformed request: {exc}"}}),
                status_code=400,
                media_type="application/json",
            )
        key = json.dumps(scenario.to_dict(), sort_keys=True, separators=(",", ":"))
        etag = hashlib.sha256(key.encode()).hexdigest()
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304)
        if estimated_cost_seconds(scenario) > async_threshold:
            jobs.submit(etag, scenario)
            return Response(
                content=json.dumps({"job": etag, "poll": f"/api/job/{etag}"}),
                status_code=202,
                media_type="application/json",
            )
        if etag not in cache:
            try:
                cache[etag] = emit_json(run_scenario(scenario)).encode()
            except NumericalError as exc:
                return Response(
                    content=json.dumps(
                        {"error": {"message": str(exc), "diagnostics": exc.diagnostics}}
                    ),
                    status_code=500,
                    media_type="application/json",
                )
            except OvalkitError as exc:
                return Response(
                    content=json.dumps({"error": {"message": str(exc)}}),
                    status_code=500,
                    media_type="application/json",
                )
        return Response(content=cache[etag], media_type="application/json", headers={"ETag": etag})

    def make_endpoint(forced: dict):
        async def endpoint(request: Request) -> Response:
            if request.method == "POST":
                try:
                    payload = await request.json()
                except Exception:
                    return Response(
                        content=json.dumps({"error": {"message": "malformed JSON body"}}),
                        status_code=400,
                        media_type="application/json",
                    )
                if not isinstance(payload, dict):
                    return Response(
                        content=json.dumps({"error": {"message": "JSON object required"}}),
                        status_code=400,
                        media_type="application/json",
                    )
            else:
                try:
                    payload = _payload_from_query(dict(request.query_params))
                except (TypeError, ValueError) as exc:
                    return Response(
                        content=json.dumps({"error": {"message": f"malformed query: {exc}"}}),
                        status_code=400,
                        media_type="application/json",
                    )
            return compute(payload, forced, request)

        return endpoint

    for name, forced in (
        ("offset", {}),
        ("envelope", {"envelope": True}),
        ("singular", {"singular": True}),
        ("contour", {"contour": True}),
    ):
        app.add_api_route(f"/api/{name}", make_endpoint(forced), methods=["GET", "POST"])

    @app.get("/api/job/{job_id}")
    def poll(job_id: str) -> Response:
        job = jobs.get(job_id)
        if job is None:
            return Response(
                content=json.dumps({"error": {"message": "unknown job"}}),
                status_code=404,
                media_type="application/json",
            )
        if job["status"] == "pending":
            return Response(
                content=json.dumps({"status": "pending"}), media_type="application/json"
            )
        if job["status"] == "error":
            return Response(
                content=json.dumps({"error": {"message": job["body"].decode()}}),
                status_code=500,
                media_type="application/json",
            )
        return Response(content=job["body"], media_type="application/json")

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    return app


def main() -> None:
    import uvicorn

    port = int(os.environ.get("OVALKIT_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(), host="127.0.0.1", port=port)


if __name__ == "__main__":
    main()
