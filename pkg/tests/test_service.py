import math

import pytest
from fastapi.testclient import TestClient

from cavex.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_curves_listing(client):
    response = client.get("/curves")
    assert response.status_code == 200
    names = {c["name"] for c in response.json()}
    assert names == {"exp", "line", "log", "parabola", "quarter_circle", "sin"}
    qc = next(c for c in response.json() if c["name"] == "quarter_circle")
    assert qc["to_x"] == pytest.approx(1.0 - 1e-9)


def test_pi_endpoint_returns_trace(client):
    response = client.post("/pi", json={"k": 6, "stages": 4})
    assert response.status_code == 200
    payload = response.json()
    assert payload["k"] == 6
    assert not payload["exhausted"]
    records = payload["records"]
    assert len(records) == 5
    assert records[-1]["sides"] == 96
    assert records[-1]["lower_float"] == pytest.approx(3.1410319, abs=1e-6)
    assert records[-1]["upper_float"] == pytest.approx(3.1427146, abs=1e-6)
    # printed decimal bounds still bracket the float values
    assert float(records[-1]["lower"]) <= records[-1]["lower_float"]
    assert float(records[-1]["upper"]) >= records[-1]["upper_float"]


def test_pi_endpoint_validates_k_and_stop_criteria(client):
    assert client.post("/pi", json={"k": 5}).status_code == 422
    both = client.post("/pi", json={"k": 6, "stages": 2, "width_tol": 1e-6})
    assert both.status_code == 422


def test_pi_endpoint_precision_exhaustion_conflict(client):
    response = client.post(
        "/pi", json={"k": 6, "width_tol": 1e-30, "precision_bits": 16})
    assert response.status_code == 409
    assert response.json()["detail"]["code"] == "precision_exhausted"


def test_arclen_endpoint_with_oracle(client):
    response = client.post("/arclen", json={
        "expression": "x^2", "from_x": 0.0, "to_x": 1.0,
        "tol": 1e-6, "oracle": True})
    assert response.status_code == 200
    payload = response.json()
    assert payload["lower"] <= 1.4789428575445644 <= payload["upper"]
    assert payload["upper"] - payload["lower"] <= 1e-6
    assert payload["oracle_delta"] <= (payload["upper"] - payload["lower"]) / 2
    assert payload["segments"][0]["orientation"] == "convex"


def test_arclen_endpoint_registry_curve(client):
    response = client.post("/arclen", json={"curve": "sin", "tol": 1e-5})
    assert response.status_code == 200
    payload = response.json()
    assert payload["lower"] <= 3.8201977890277120 <= payload["upper"]


def test_arclen_endpoint_parse_error_payload(client):
    response = client.post("/arclen", json={
        "expression": "2x", "from_x": 0.0, "to_x": 1.0})
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["code"] == "parse_error"
    assert detail["offset"] == 1


def test_arclen_endpoint_conflict_on_no_convergence(client):
    response = client.post("/arclen", json={
        "expression": "x^2", "from_x": 0.0, "to_x": 1.0,
        "tol": 1e-16, "max_stages": 4})
    assert response.status_code == 409
    assert response.json()["detail"]["code"] == "did_not_converge"


def test_arclen_endpoint_needs_exactly_one_source(client):
    assert client.post("/arclen", json={}).status_code == 422
    assert client.post("/arclen", json={
        "curve": "exp", "expression": "x"}).status_code == 422
    assert client.post("/arclen", json={
        "expression": "x^2", "from_x": 0.0}).status_code == 422


def test_metric_demo_endpoint(client):
    response = client.post("/metric-demo", json={
        "curve": "exp", "partitions": 6, "seed": 9})
    assert response.status_code == 200
    payload = response.json()
    taxicabs = {row["taxicab"] for row in payload["rows"]}
    assert taxicabs == {math.e}
    secants = {row["secant"] for row in payload["rows"]}
    assert len(secants) > 1
    assert payload["oracle"] == pytest.approx(2.0034971116273525, abs=1e-8)


def test_metric_demo_deterministic(client):
    body = {"curve": "log", "partitions": 5, "seed": 11}
    first = client.post("/metric-demo", json=body).json()
    second = client.post("/metric-demo", json=body).json()
    assert first == second


def test_metric_demo_rejects_non_monotone(client):
    response = client.post("/metric-demo", json={
        "expression": "x^2", "from_x": -1.0, "to_x": 1.0, "partitions": 3})
    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "non_monotone"


def test_compare_endpoint_nested(client):
    response = client.post("/compare", json={
        "inner": "x^2", "outer": "2*x^2 - x", "from_x": 0.0, "to_x": 1.0})
    assert response.status_code == 200
    payload = response.json()
    assert payload["inner_is_shorter"]
    assert payload["ordering_consistent"]
    assert payload["inner_upper"] <= payload["outer_lower"]


def test_compare_endpoint_not_nested_conflict(client):
    response = client.post("/compare", json={
        "inner": "x^3", "outer": "x^2", "from_x": 0.0, "to_x": 1.0})
    assert response.status_code == 409
    assert response.json()["detail"]["code"] == "not_nested"
