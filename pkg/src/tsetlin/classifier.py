"""One-vs-rest classifier built from independent binary machines."""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.models.reports import EpochRecord, TrainHistory
from src.models.tm_config import TMConfig
from src.tsetlin.clauses import ClauseBank, Prediction, predict
from src.tsetlin.trainer import TsetlinMachine, epoch_record, fit_epoch


class TsetlinClassifier:
    """
    Two classes use a single machine voting for class 1. More classes use one
    machine per class, each trained on the full data relabeled one-vs-rest, and
    predict by argmax of the per-class vote sums.

    All machines share one generator seeded from ``cfg.seed``; states are
    initialised in class order, then every epoch trains the machines in class order.
    """

    def __init__(self, cfg: TMConfig, n_features: int, n_classes: int, rng: np.random.Generator | None = None):
        if n_classes < 2:
            raise ValueError(f"At least two classes are required, got {n_classes}")
        if n_features < 1:
            raise ValueError("At least one Boolean feature is required")
        self.cfg = cfg
        self.n_features = n_features
        self.n_classes = n_classes
        self.rng = rng if rng is not None else np.random.default_rng(cfg.seed)
        n_machines = 1 if n_classes == 2 else n_classes
        self.machines = [TsetlinMachine.initialize(cfg, n_features, self.rng) for _ in range(n_machines)]
        self.epochs_trained = 0

    @classmethod
    def from_machines(cls, cfg: TMConfig, machines: list[TsetlinMachine], n_classes: int) -> TsetlinClassifier:
        expected = 1 if n_classes == 2 else n_classes
        if len(machines) != expected:
            raise ValueError(f"{n_classes} classes need {expected} machines, got {len(machines)}")
        classifier = cls.__new__(cls)
        classifier.cfg = cfg
        classifier.n_features = machines[0].n_features
        classifier.n_classes = n_classes
        classifier.rng = np.random.default_rng(cfg.seed)
        classifier.machines = machines
        classifier.epochs_trained = 0
        return classifier

    @property
    def is_binary(self) -> bool:
        return self.n_classes == 2

    def banks(self) -> list[ClauseBank]:
        return [m.bank() for m in self.machines]

    def _targets(self, y: np.ndarray, index: int) -> np.ndarray:
        positive_class = 1 if self.is_binary else index
        return (y == positive_class).astype(np.int64)

    def _check_inputs(self, x: np.ndarray) -> np.ndarray:
        bits = np.asarray(x).astype(bool)
        if bits.ndim != 2 or bits.shape[1] != self.n_features:
            raise ValueError(f"Expected inputs of shape (m, {self.n_features}), got {bits.shape}")
        return bits

    def fit_epoch(self, x: np.ndarray, y: np.ndarray) -> EpochRecord:
        x = self._check_inputs(x)
        y = np.asarray(y, dtype=np.int64)
        if x.shape[0] == 0:
            raise ValueError("Cannot train on an empty dataset")
        for index, machine in enumerate(self.machines):
            fit_epoch(machine, x, self._targets(y, index), self.cfg, self.rng)
        self.epochs_trained += 1
        record = epoch_record(self.epochs_trained, self.accuracy(x, y), self.banks())
        logger.debug("Epoch {}: train accuracy {:.4f}", record.epoch, record.accuracy)
        return record

    def fit(self, x: np.ndarray, y: np.ndarray, epochs: int | None = None) -> TrainHistory:
        history = TrainHistory()
        for _ in range(epochs if epochs is not None else self.cfg.epochs):
            history.records.append(self.fit_epoch(x, y))
        return history

    def vote_sums(self, x: np.ndarray) -> np.ndarray:
        """Vote sums of shape (m, machines)."""
        x = self._check_inputs(x)
        return np.stack([m.vote_sums(x) for m in self.machines], axis=1)

    def predict(self, x: np.ndarray) -> np.ndarray:
        votes = self.vote_sums(x)
        if self.is_binary:
            v = votes[:, 0]
            return (v >= 1 if self.cfg.tie_to_zero else v >= 0).astype(np.int64)
        return np.argmax(votes, axis=1).astype(np.int64)

    def predict_one(self, x: np.ndarray) -> Prediction:
        return predict(self.banks(), x, self.cfg.tie_to_zero)

    def margins(self, x: np.ndarray) -> np.ndarray:
        """The vote sum for two classes, otherwise top vote sum minus runner-up."""
        votes = self.vote_sums(x)
        if self.is_binary:
            return votes[:, 0]
        ordered = np.sort(votes, axis=1)
        return ordered[:, -1] - ordered[:, -2]

    def accuracy(self, x: np.ndarray, y: np.ndarray) -> float:
        y = np.asarray(y, dtype=np.int64)
        if y.size == 0:
            raise ValueError("Cannot score an empty dataset")
        return float(np.mean(self.predict(x) == y))
