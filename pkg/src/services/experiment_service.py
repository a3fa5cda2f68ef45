"""Train / evaluate / predict orchestration over raw tables."""

from __future__ import annotations

import numpy as np
from loguru import logger
from sklearn.metrics import confusion_matrix

from src.models.dataset import RawTable
from src.models.reports import EvalReport, TrainReport
from src.models.service_error import EmptyDatasetError, MissingColumnError, UnknownLabelError
from src.models.tm_config import TMConfig
from src.services.binarizer_service import fit_thresholds, split_indices
from src.services.persistence_service import TrainedModel
from src.tsetlin.classifier import TsetlinClassifier


def train_model(table: RawTable, cfg: TMConfig, test_fraction: float = 0.2) -> tuple[TrainedModel, TrainReport]:
    """
    Split stratified by class with the run seed, fit thresholds on the training
    part only, then train for ``cfg.epochs`` epochs.
    """
    if table.labels is None or table.class_names is None:
        raise MissingColumnError("Training data needs a label column")
    if len(table.class_names) < 2:
        raise EmptyDatasetError(f"Training data has a single class {table.class_names}; at least two are needed")
    train_idx, test_idx = split_indices(table.labels, test_fraction, cfg.seed)
    binarizer = fit_thresholds(table.values[train_idx], cfg.bits_per_feature, table.feature_names)
    if binarizer.n_bits == 0:
        raise EmptyDatasetError("Every feature is constant on the training data; nothing to learn from")
    classifier = TsetlinClassifier(cfg, binarizer.n_bits, len(table.class_names))
    model = TrainedModel(classifier=classifier, binarizer=binarizer, class_names=list(table.class_names))

    x_train = model.encode(table.values[train_idx])
    y_train = table.labels[train_idx]
    logger.info(
        "Training {} machine(s), {} clauses each, on {} samples for {} epochs",
        len(classifier.machines),
        cfg.n_clauses,
        len(train_idx),
        cfg.epochs,
    )
    history = classifier.fit(x_train, y_train)
    train_accuracy = classifier.accuracy(x_train, y_train)
    test_accuracy = (
        classifier.accuracy(model.encode(table.values[test_idx]), table.labels[test_idx]) if len(test_idx) else None
    )
    logger.info("Train accuracy {:.4f}, test accuracy {}", train_accuracy, test_accuracy)
    report = TrainReport(
        train_accuracy=train_accuracy,
        test_accuracy=test_accuracy,
        n_train=len(train_idx),
        n_test=len(test_idx),
        n_features=binarizer.n_bits,
        class_names=model.class_names,
        history=history,
    )
    return model, report


def labels_to_model_ids(table: RawTable, model: TrainedModel) -> np.ndarray:
    """Re-map the table's own dense ids onto the model's class ids by label name."""
    if table.labels is None or table.class_names is None:
        raise MissingColumnError("Evaluation data needs a label column")
    unknown = sorted(set(table.class_names) - set(model.class_names))
    if unknown:
        raise UnknownLabelError(f"Labels {unknown} were not seen in training; model classes are {model.class_names}")
    lookup = np.asarray([model.class_names.index(name) for name in table.class_names], dtype=np.int64)
    return lookup[table.labels]


def evaluate(model: TrainedModel, table: RawTable) -> EvalReport:
    y_true = labels_to_model_ids(table, model)
    y_pred = model.predict_ids(table.values)
    confusion = confusion_matrix(y_true, y_pred, labels=list(range(len(model.class_names))))
    accuracy = float(np.mean(y_true == y_pred))
    logger.info("Evaluated {} samples: accuracy {:.4f}", len(y_true), accuracy)
    return EvalReport(
        accuracy=accuracy,
        n_samples=len(y_true),
        class_names=model.class_names,
        confusion=confusion.tolist(),
    )


def predict(model: TrainedModel, table: RawTable) -> list[str]:
    model.check_arity(table.values)
    return model.predict_labels(table.values)
