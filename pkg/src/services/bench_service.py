"""Epochs-to-accuracy, time per epoch and model size across a grid of specificity values."""

from __future__ import annotations

import time

import numpy as np
import pydantic
from loguru import logger

from src.models.constants import BENCH_EPOCH_CAP, BENCH_TARGET_ACCURACY
from src.models.dataset import RawTable
from src.models.reports import BenchReport, BenchRow
from src.models.service_error import ConfigError, MissingColumnError
from src.models.tm_config import TMConfig
from src.services.binarizer_service import encode_matrix, fit_thresholds, split_indices
from src.services.persistence_service import sparse_footprint_bytes
from src.tsetlin.classifier import TsetlinClassifier
from src.tsetlin.interpret import clause_length_stats


def bench_run(
    table: RawTable,
    cfg: TMConfig,
    test_fraction: float = 0.2,
    target_accuracy: float = BENCH_TARGET_ACCURACY,
    epoch_cap: int = BENCH_EPOCH_CAP,
) -> BenchRow:
    if table.labels is None or table.class_names is None:
        raise MissingColumnError("Bench data needs a label column")
    train_idx, test_idx = split_indices(table.labels, test_fraction, cfg.seed)
    score_idx = test_idx if len(test_idx) else train_idx
    binarizer = fit_thresholds(table.values[train_idx], cfg.bits_per_feature, table.feature_names)
    x_train = encode_matrix(table.values[train_idx], binarizer)
    x_score = encode_matrix(table.values[score_idx], binarizer)
    y_train, y_score = table.labels[train_idx], table.labels[score_idx]

    classifier = TsetlinClassifier(cfg, binarizer.n_bits, len(table.class_names))
    reached: int | None = None
    elapsed = 0.0
    for epoch in range(1, epoch_cap + 1):
        start = time.perf_counter()
        classifier.fit_epoch(x_train, y_train)
        elapsed += time.perf_counter() - start
        if classifier.accuracy(x_score, y_score) >= target_accuracy:
            reached = epoch
            break
    if reached is None:
        logger.warning(
            "s={} seed={}: {:.0%} accuracy not reached within {} epochs", cfg.s, cfg.seed, target_accuracy, epoch_cap
        )
    lengths = [clause_length_stats(bank).mean_all for bank in classifier.banks()]
    return BenchRow(
        s=cfg.s,
        seed=cfg.seed,
        epochs_to_target=reached,
        seconds_per_epoch=elapsed / classifier.epochs_trained,
        memory_bytes=sparse_footprint_bytes(classifier),
        mean_clause_length=float(np.mean(lengths)),
    )


def bench(
    table: RawTable,
    cfg: TMConfig,
    s_values: list[float],
    seeds: list[int],
    test_fraction: float = 0.2,
    target_accuracy: float = BENCH_TARGET_ACCURACY,
    epoch_cap: int = BENCH_EPOCH_CAP,
) -> BenchReport:
    report = BenchReport(target_accuracy=target_accuracy, epoch_cap=epoch_cap)
    for s in s_values:
        for seed in seeds:
            try:
                run_cfg = TMConfig.model_validate({**cfg.model_dump(), "s": s, "seed": seed})
            except pydantic.ValidationError as ve:
                raise ConfigError(f"Invalid bench grid value s={s}: {ve.errors(include_url=False)[0]['msg']}")
            row = bench_run(table, run_cfg, test_fraction, target_accuracy, epoch_cap)
            logger.info(
                "s={} seed={}: epochs {}, {:.4f}s/epoch, {} bytes",
                s,
                seed,
                row.epochs_label,
                row.seconds_per_epoch,
                row.memory_bytes,
            )
            report.rows.append(row)
    return report
