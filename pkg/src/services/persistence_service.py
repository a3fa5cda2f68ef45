"""Versioned JSON model files and the in-memory model they load into."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pydantic
from loguru import logger

from src.models.constants import MODEL_FORMAT_VERSION
from src.models.dataset import Binarizer
from src.models.model_file import MachineRecord, ModelFile, ModelSummary
from src.models.service_error import ArityError, ModelFileError, ModelNotFoundError, ModelVersionError
from src.services.binarizer_service import encode_matrix
from src.tsetlin.automata import StateMatrix
from src.tsetlin.classifier import TsetlinClassifier
from src.tsetlin.trainer import TsetlinMachine


@dataclass
class TrainedModel:
    """A classifier together with the thresholds and class names it was trained with."""

    classifier: TsetlinClassifier
    binarizer: Binarizer
    class_names: list[str]

    @property
    def n_raw_features(self) -> int:
        return self.binarizer.n_raw_features

    def encode(self, raw: np.ndarray) -> np.ndarray:
        return encode_matrix(raw, self.binarizer)

    def predict_ids(self, raw: np.ndarray) -> np.ndarray:
        return self.classifier.predict(self.encode(raw))

    def predict_labels(self, raw: np.ndarray) -> list[str]:
        return [self.class_names[i] for i in self.predict_ids(raw)]

    def vote_sums(self, raw: np.ndarray) -> np.ndarray:
        return self.classifier.vote_sums(self.encode(raw))

    def margins(self, raw: np.ndarray) -> np.ndarray:
        return self.classifier.margins(self.encode(raw))

    def check_arity(self, raw: np.ndarray) -> None:
        width = np.atleast_2d(raw).shape[1]
        if width != self.n_raw_features:
            raise ArityError(f"Model expects {self.n_raw_features} raw features, got {width}")

    def summary(self) -> ModelSummary:
        return ModelSummary(
            class_names=self.class_names,
            raw_features=self.binarizer.feature_names,
            n_bits=self.binarizer.n_bits,
            n_clauses=self.classifier.cfg.n_clauses,
            t_margins=[m.t_margin for m in self.classifier.machines],
            epochs_trained=self.classifier.epochs_trained,
            footprint_bytes=sparse_footprint_bytes(self.classifier),
        )


def _machine_record(machine: TsetlinMachine) -> MachineRecord:
    return MachineRecord(
        n_clauses=machine.n_clauses,
        n_features=machine.n_features,
        big_n=machine.state.big_n,
        t_margin=machine.t_margin,
        states=machine.state.states.ravel().tolist(),
        weights=machine.weights.tolist(),
    )


def _machine(record: MachineRecord) -> TsetlinMachine:
    states = np.asarray(record.states, dtype=np.int32).reshape(record.n_clauses, 2 * record.n_features)
    return TsetlinMachine(
        state=StateMatrix(states, record.big_n),
        weights=np.asarray(record.weights, dtype=np.int64),
        t_margin=record.t_margin,
    )


def to_model_file(model: TrainedModel) -> ModelFile:
    return ModelFile(
        config=model.classifier.cfg,
        machines=[_machine_record(m) for m in model.classifier.machines],
        binarizer=model.binarizer,
        class_names=model.class_names,
        epochs_trained=model.classifier.epochs_trained,
    )


def from_model_file(model_file: ModelFile) -> TrainedModel:
    machines = [_machine(r) for r in model_file.machines]
    classifier = TsetlinClassifier.from_machines(model_file.config, machines, len(model_file.class_names))
    classifier.epochs_trained = model_file.epochs_trained
    return TrainedModel(classifier=classifier, binarizer=model_file.binarizer, class_names=model_file.class_names)


def save_model(model: TrainedModel, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_model_file(model).model_dump_json(indent=1), encoding="utf-8")
    logger.info("Model saved to {}", path)
    return path


def load_model(path: Path) -> TrainedModel:
    path = Path(path)
    if not path.is_file():
        raise ModelNotFoundError(f"Model file {path} does not exist")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ModelFileError(f"Model file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ModelFileError(f"Model file {path} does not contain a JSON object")
    version = data.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f"Model file {path} has format version {version}, this build reads version {MODEL_FORMAT_VERSION}"
        )
    try:
        model = from_model_file(ModelFile.model_validate(data))
    except pydantic.ValidationError as ve:
        raise ModelFileError(
            f"Model file {path} is corrupted: "
            + "; ".join(str(e["msg"]) for e in ve.errors(include_url=False, include_context=False))
        )
    except ValueError as e:
        raise ModelFileError(f"Model file {path} is corrupted: {e}")
    logger.info("Model loaded from {}: classes {}", path, model.class_names)
    return model


def sparse_footprint_bytes(classifier: TsetlinClassifier) -> int:
    """Size of the JSON inference form: included literal ids per clause plus the weights, per machine."""
    sparse = [
        {
            "clauses": [np.flatnonzero(row).tolist() for row in bank.include],
            "weights": bank.weights.tolist(),
        }
        for bank in classifier.banks()
    ]
    return len(json.dumps(sparse, separators=(",", ":")).encode("utf-8"))
