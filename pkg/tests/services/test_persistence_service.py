import json

import numpy as np
import pytest

from src.models.constants import MODEL_FORMAT_VERSION
from src.models.service_error import ArityError, ModelFileError, ModelNotFoundError, ModelVersionError
from src.services.persistence_service import (
    from_model_file,
    load_model,
    save_model,
    sparse_footprint_bytes,
    to_model_file,
)


@pytest.fixture
def saved_iris(tmp_path, iris_model):
    return save_model(iris_model, tmp_path / "models" / "iris.json")


def test_round_trip_predicts_identically(saved_iris, iris_model, iris_table):
    loaded = load_model(saved_iris)
    rng = np.random.default_rng(0)
    lo, hi = iris_table.values.min(axis=0), iris_table.values.max(axis=0)
    raw = rng.uniform(lo - 1.0, hi + 1.0, size=(1000, 4))
    np.testing.assert_array_equal(loaded.predict_ids(raw), iris_model.predict_ids(raw))
    np.testing.assert_array_equal(loaded.vote_sums(raw), iris_model.vote_sums(raw))


def test_round_trip_keeps_state_and_metadata(saved_iris, iris_model):
    loaded = load_model(saved_iris)
    assert loaded.class_names == iris_model.class_names
    assert loaded.binarizer == iris_model.binarizer
    assert loaded.classifier.cfg == iris_model.classifier.cfg
    assert loaded.classifier.epochs_trained == iris_model.classifier.epochs_trained
    for a, b in zip(loaded.classifier.machines, iris_model.classifier.machines):
        assert a.state == b.state
        np.testing.assert_array_equal(a.weights, b.weights)
        assert a.t_margin == b.t_margin


def test_model_file_round_trip_in_memory(xor_model):
    again = from_model_file(to_model_file(xor_model))
    x = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
    np.testing.assert_array_equal(again.predict_ids(x), xor_model.predict_ids(x))


def test_missing_file(tmp_path):
    with pytest.raises(ModelNotFoundError):
        load_model(tmp_path / "absent.json")


def test_not_json(tmp_path):
    path = tmp_path / "model.json"
    path.write_text('{"format_version": 1, ')
    with pytest.raises(ModelFileError):
        load_model(path)


def test_not_an_object(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(ModelFileError):
        load_model(path)


def test_version_mismatch(saved_iris):
    data = json.loads(saved_iris.read_text())
    data["format_version"] = MODEL_FORMAT_VERSION + 1
    saved_iris.write_text(json.dumps(data))
    with pytest.raises(ModelVersionError) as excinfo:
        load_model(saved_iris)
    assert str(MODEL_FORMAT_VERSION + 1) in excinfo.value.error_msg


def test_truncated_states(saved_iris):
    data = json.loads(saved_iris.read_text())
    data["machines"][0]["states"] = data["machines"][0]["states"][:-1]
    saved_iris.write_text(json.dumps(data))
    with pytest.raises(ModelFileError):
        load_model(saved_iris)


def test_state_out_of_range(saved_iris):
    data = json.loads(saved_iris.read_text())
    data["machines"][0]["states"][0] = 10_000
    saved_iris.write_text(json.dumps(data))
    with pytest.raises(ModelFileError):
        load_model(saved_iris)


def test_machine_count_must_match_classes(saved_iris):
    data = json.loads(saved_iris.read_text())
    data["machines"] = data["machines"][:2]
    saved_iris.write_text(json.dumps(data))
    with pytest.raises(ModelFileError):
        load_model(saved_iris)


def test_check_arity(iris_model):
    with pytest.raises(ArityError):
        iris_model.check_arity(np.zeros((2, 3)))


def test_summary(iris_model):
    summary = iris_model.summary()
    assert summary.class_names == ["setosa", "versicolor", "virginica"]
    assert summary.n_bits == iris_model.binarizer.n_bits
    assert len(summary.t_margins) == 3
    assert summary.epochs_trained == 5
    assert summary.footprint_bytes == sparse_footprint_bytes(iris_model.classifier)
