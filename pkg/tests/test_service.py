"""HTTP facade: parity with the CLI, validation codes, caching, jobs."""

import json
import time

import pytest
from fastapi.testclient import TestClient

from ovalkit.scenario import emit_json, run_scenario, validate_scenario
from ovalkit.service import create_app, estimated_cost_seconds


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_offset_matches_cli_bytes(client):
    r = client.get(
        "/api/offset",
        params={"curve": "cayley", "a": 1, "b": 1, "d": "0.5", "side": "both", "samples": 400},
    )
    assert r.status_code == 200
    scenario = validate_scenario(
        {"curve": {"kind": "cayley", "a": 1.0, "b": 1.0}, "d": [0.5], "side": "both", "samples": 400}
    )
    assert r.content == emit_json(run_scenario(scenario)).encode()


def test_post_body_equivalent_to_query(client):
    params = {"curve": "circle", "r": 1.0, "d": "0.5", "samples": 300}
    body = {"curve": {"kind": "circle", "r": 1.0}, "d": [0.5], "samples": 300}
    r1 = client.get("/api/offset", params=params)
    r2 = client.post("/api/offset", json=body)
    assert r1.status_code == r2.status_code == 200
    assert r1.content == r2.content


def test_invalid_distance_422_with_field(client):
    r = client.get("/api/offset", params={"curve": "cayley", "a": 1, "b": 1, "d": "0"})
    assert r.status_code == 422
    assert r.json()["error"]["field"] == "d[0]"


def test_malformed_request_400(client):
    r = client.get("/api/offset", params={"curve": "cayley", "a": "xx", "b": 1, "d": "0.5"})
    assert r.status_code == 400
    r = client.post("/api/offset", content=b"{not json", headers={"content-type": "application/json"})
    assert r.status_code == 400


def test_circle_singular_empty(client):
    r = client.get("/api/singular", params={"curve": "circle", "r": 1.0, "d": "0.5", "samples": 300})
    assert r.status_code == 200
    assert json.loads(r.content)["singular_points"] == []


def test_envelope_and_contour_endpoints(client):
    r = client.get(
        "/api/envelope", params={"curve": "ellipse", "a": 5, "b": 3, "d": "1.0", "samples": 300}
    )
    assert r.status_code == 200 and json.loads(r.content)["envelopes"]
    r = client.get("/api/contour", params={"curve": "cayley", "a": 3, "b": 2, "samples": 300})
    assert r.status_code == 200
    assert len(json.loads(r.content)["contours"]["true_oval"]["arcs"]) == 2


def test_samples_clamped(client):
    r = client.get("/api/offset", params={"curve": "circle", "r": 1.0, "d": "0.5", "samples": 8})
    assert json.loads(r.content)["scenario"]["samples"] == 64
    r = client.get("/api/offset", params={"curve": "circle", "r": 1.0, "d": "0.5", "samples": 100000})
    assert json.loads(r.content)["scenario"]["samples"] == 8192


def test_statelessness_and_etag(client):
    params = {"curve": "circle", "r": 1.0, "d": "0.7", "samples": 200}
    r1 = client.get("/api/offset", params=params)
    client.get("/api/offset", params={"curve": "cayley", "a": 1, "b": 1, "d": "1.0", "samples": 200})
    r2 = client.get("/api/offset", params=params)
    assert r1.content == r2.content
    etag = r1.headers["ETag"]
    r3 = client.get("/api/offset", params=params, headers={"If-None-Match": etag})
    assert r3.status_code == 304


def test_cors_header_for_ui_origin(client):
    r = client.get(
        "/api/health", headers={"Origin": "http://localhost:8080"}
    )
    assert r.headers.get("access-control-allow-origin") == "http://localhost:8080"


def test_job_flow_for_expensive_requests():
    app = create_app(async_threshold=1e-6)
    c = TestClient(app)
    r = c.get("/api/singular", params={"curve": "circle", "r": 1.0, "d": "0.5", "samples": 300})
    assert r.status_code == 202
    poll = r.json()["poll"]
    deadline = time.time() + 30.0
    while time.time() < deadline:
        rp = c.get(poll)
        if rp.status_code == 200 and b"singular_points" in rp.content:
            break
        time.sleep(0.05)
    assert rp.status_code == 200
    assert json.loads(rp.content)["singular_points"] == []
    # resubmitting the same request reuses the finished job id
    r2 = c.get("/api/singular", params={"curve": "circle", "r": 1.0, "d": "0.5", "samples": 300})
    assert r2.status_code == 202 and r2.json()["poll"] == poll


def test_unknown_job_404():
    c = TestClient(create_app())
    assert c.get("/api/job/deadbeef").status_code == 404


def test_cost_model_orders_scenarios():
    cheap = validate_scenario({"curve": {"kind": "circle", "r": 1.0}, "d": [0.5], "samples": 500})
    heavy = validate_scenario(
        {"curve": {"kind": "cayley", "a": 1.0, "b": 1.0}, "d": [0.5], "samples": 8000, "singular": True}
    )
    assert estimated_cost_seconds(cheap) < estimated_cost_seconds(heavy)
    assert estimated_cost_seconds(heavy) > 1.0
