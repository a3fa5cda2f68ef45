from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from loguru import logger
from sklearn.datasets import load_iris

from src.models.dataset import RawTable
from src.models.tm_config import TMConfig
from src.services.binarizer_service import write_truth_table
from src.services.experiment_service import train_model
from src.services.persistence_service import TrainedModel
from tests.helpers import repeated_truth_table

IRIS_FEATURES = ["sepal_length", "sepal_width", "petal_length", "petal_width"]


@pytest.fixture(scope="session")
def iris_frame() -> pd.DataFrame:
    iris = load_iris()
    frame = pd.DataFrame(iris.data, columns=IRIS_FEATURES)
    frame["species"] = [iris.target_names[t] for t in iris.target]
    return frame


@pytest.fixture
def iris_csv(tmp_path, iris_frame) -> Path:
    path = tmp_path / "iris.csv"
    iris_frame.to_csv(path, index=False)
    return path


@pytest.fixture
def xor_csv(tmp_path) -> Path:
    return write_truth_table("xor", tmp_path / "xor.csv")


@pytest.fixture
def and_csv(tmp_path) -> Path:
    return write_truth_table("and", tmp_path / "and.csv")


XOR_CONFIG = TMConfig(n_clauses=20, t_margin=10, s=3.9, big_n=100, epochs=60, seed=7)
IRIS_CONFIG = TMConfig(n_clauses=20, t_margin=10, s=3.9, epochs=5, seed=1)


@pytest.fixture(scope="session")
def xor_model() -> TrainedModel:
    model, _ = train_model(repeated_truth_table("xor"), XOR_CONFIG, test_fraction=0.0)
    return model


@pytest.fixture(scope="session")
def iris_table(iris_frame) -> RawTable:
    iris = load_iris()
    return RawTable(
        values=iris_frame[IRIS_FEATURES].to_numpy(dtype=float),
        feature_names=IRIS_FEATURES,
        labels=iris.target.astype(np.int64),
        class_names=list(iris.target_names),
    )


@pytest.fixture(scope="session")
def iris_model(iris_table) -> TrainedModel:
    model, _ = train_model(iris_table, IRIS_CONFIG)
    return model


@pytest.fixture
def caplog_loguru(caplog):
    handler_id = logger.add(caplog.handler, format="{message}", level="DEBUG")
    yield caplog
    logger.remove(handler_id)
