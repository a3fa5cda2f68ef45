import numpy as np

from src.models.dataset import Binarizer, FeatureSummary, RawTable
from src.models.tm_config import TMConfig
from src.services.binarizer_service import truth_table
from src.services.persistence_service import TrainedModel
from src.tsetlin.automata import StateMatrix
from src.tsetlin.classifier import TsetlinClassifier
from src.tsetlin.clauses import ClauseBank
from src.tsetlin.trainer import TsetlinMachine


def include_row(literal_ids, n_features):
    row = np.zeros(2 * n_features, dtype=bool)
    row[list(literal_ids)] = True
    return row


def make_bank(clauses, n_features, weights=None):
    """Bank from per-clause literal id lists; row i is clause number i+1, so even rows vote for the class."""
    include = np.stack([include_row(c, n_features) for c in clauses])
    w = np.ones(len(clauses), dtype=np.int64) if weights is None else np.asarray(weights, dtype=np.int64)
    return ClauseBank(include=include, weights=w)


def repeated_truth_table(name, repeats=25):
    table = truth_table(name)
    return RawTable(
        values=np.tile(table.values, (repeats, 1)),
        feature_names=table.feature_names,
        labels=np.tile(table.labels, repeats),
        class_names=table.class_names,
    )


XOR_CLAUSES = [[0, 3], [0, 1], [2, 1], [2, 3]]


def make_machine(clauses, n_features, weights=None, t_margin=2, big_n=10):
    include = np.stack([include_row(c, n_features) for c in clauses])
    w = np.ones(len(clauses), dtype=np.int64) if weights is None else np.asarray(weights, dtype=np.int64)
    return TsetlinMachine(state=StateMatrix(np.where(include, 2 * big_n, 1), big_n), weights=w, t_margin=t_margin)


def make_model(machines, class_names, feature_names=("x0", "x1")):
    """Model over 0/1 raw features, one bit per feature (threshold 0)."""
    n = len(feature_names)
    binarizer = Binarizer(
        feature_names=list(feature_names),
        thresholds=[[0.0] for _ in range(n)],
        summaries=[FeatureSummary(minimum=0.0, maximum=1.0, median=0.0) for _ in range(n)],
    )
    cfg = TMConfig(n_clauses=machines[0].n_clauses, big_n=machines[0].state.big_n)
    classifier = TsetlinClassifier.from_machines(cfg, machines, len(class_names))
    return TrainedModel(classifier=classifier, binarizer=binarizer, class_names=list(class_names))


def xor_rule_model(weights=(2, 1, 1, 1)):
    return make_model([make_machine(XOR_CLAUSES, 2, weights)], ["0", "1"])
