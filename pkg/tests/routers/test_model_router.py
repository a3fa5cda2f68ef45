from unittest.mock import Mock

import pytest
from fastapi.testclient import TestClient

from src.dependencies import get_model_service, get_tsetlin_settings
from src.main import app
from src.models.api_models import SystemErr, ValidationError
from src.services.model_service import NO_MODEL_ERROR, ModelService
from src.settings.tsetlin_settings import TsetlinSettings
from tests.helpers import xor_rule_model


@pytest.fixture
def client():
    app.dependency_overrides[get_model_service] = lambda: ModelService(xor_rule_model())
    app.dependency_overrides[get_tsetlin_settings] = lambda: TsetlinSettings(default_top_k=1)
    yield TestClient(app)
    app.dependency_overrides = {}


def test_predict_success(client):
    response = client.post("/v1/predict", json={"rows": [[0, 0], [1, 0]]})

    assert response.status_code == 200
    assert response.json() == {"labels": ["0", "1"], "class_ids": [0, 1], "vote_sums": [[-1], [2]]}


def test_predict_arity_mismatch(client):
    response = client.post("/v1/predict", json={"rows": [[0, 0, 1]]})

    assert response.status_code == 400
    assert "2 values" in response.json()["errors"][0]


def test_predict_malformed_body(client):
    response = client.post("/v1/predict", json={"data": []})

    assert response.status_code == 422


def test_rules_default_top_k(client):
    response = client.get("/v1/rules")

    assert response.status_code == 200
    body = response.json()
    assert body["top_k"] == 1
    assert body["rules"] == [{"class_name": "1", "text": "x0 ∧ ¬x1", "terms": [[1, -2]]}]


def test_rules_explicit_top_k(client):
    response = client.get("/v1/rules?top_k=5")

    assert response.status_code == 200
    assert response.json()["rules"][0]["text"] == "(x0 ∧ ¬x1) ∨ (x1 ∧ ¬x0)"


def test_rules_rejects_zero_top_k(client):
    response = client.get("/v1/rules?top_k=0")

    assert response.status_code == 422


def test_model_summary(client):
    response = client.get("/v1/model")

    assert response.status_code == 200
    assert response.json()["class_names"] == ["0", "1"]


def test_no_model_loaded():
    app.dependency_overrides[get_model_service] = lambda: ModelService(None)
    response = TestClient(app).get("/v1/model")
    app.dependency_overrides = {}

    assert response.status_code == 500
    assert response.json() == {"error": NO_MODEL_ERROR}


def test_service_errors_map_to_status_codes():
    service = Mock()
    service.rules.return_value = ValidationError(errors=["bad"])
    service.predict.return_value = SystemErr(error="boom")
    app.dependency_overrides[get_model_service] = lambda: service
    client = TestClient(app)

    rules = client.get("/v1/rules?top_k=2")
    predict = client.post("/v1/predict", json={"rows": []})
    app.dependency_overrides = {}

    assert rules.status_code == 400
    assert rules.json() == {"errors": ["bad"]}
    assert predict.status_code == 500
    assert predict.json() == {"error": "boom"}
