from starlette.testclient import TestClient

from src.dependencies import get_model_service
from src.main import app
from src.services.model_service import ModelService
from tests.helpers import xor_rule_model

client = TestClient(app)


def test_routes_are_registered():
    paths = client.get("/openapi.json").json()["paths"]

    assert set(paths) >= {"/v1/predict", "/v1/rules", "/v1/model"}


def test_middleware_passes_the_response_through():
    app.dependency_overrides[get_model_service] = lambda: ModelService(xor_rule_model())

    resp = client.post("/v1/predict", json={"rows": [[0, 1]]})

    app.dependency_overrides = {}
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "application/json"
    assert resp.json()["labels"] == ["1"]


def test_cors_headers():
    resp = client.options(
        "/v1/model",
        headers={"Origin": "http://localhost:3000", "Access-Control-Request-Method": "GET"},
    )

    assert resp.status_code == 200
    assert resp.headers["access-control-allow-origin"] == "http://localhost:3000"
