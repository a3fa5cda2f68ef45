"""CSV ingestion and thermometer binarization of continuous features."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger
from sklearn.model_selection import train_test_split

from src.models.dataset import Binarizer, Dataset, FeatureSummary, RawTable
from src.models.service_error import (
    ArityError,
    ConfigError,
    DatasetNotFoundError,
    EmptyDatasetError,
    MalformedRowError,
    MissingColumnError,
)

TRUTH_TABLES: dict[str, list[int]] = {
    "xor": [0, 1, 1, 0],
    "and": [0, 0, 0, 1],
    "or": [0, 1, 1, 1],
}


def _column_thresholds(name: str, column: np.ndarray, k: int) -> list[float]:
    distinct = np.unique(column)
    if distinct.size < 2:
        logger.warning("Feature {} is constant on the training data; it gets no thresholds", name)
        return []
    quantiles = np.quantile(column, [j / (k + 1) for j in range(1, k + 1)])
    # a threshold's split is identified by how many distinct values lie at or below it
    splits = np.searchsorted(distinct, quantiles, side="right")
    kept: list[float] = []
    seen: set[int] = set()
    for q, split in zip(quantiles, splits):
        if 0 < split < distinct.size and split not in seen:
            seen.add(int(split))
            kept.append(float(q))
    if len(kept) < k:
        logger.warning("Feature {} yields {} distinct thresholds instead of {}", name, len(kept), k)
    return kept


def fit_thresholds(raw: np.ndarray, k: int, feature_names: list[str] | None = None) -> Binarizer:
    """Thresholds at the j/(k+1) quantiles (j = 1..k) of each training column."""
    if k < 1:
        raise ConfigError(f"Bits per feature must be >= 1, got {k}")
    values = np.asarray(raw, dtype=float)
    if values.ndim != 2 or values.shape[0] == 0:
        raise EmptyDatasetError("Cannot fit thresholds on an empty matrix")
    names = feature_names if feature_names is not None else [f"f{i}" for i in range(values.shape[1])]
    if len(names) != values.shape[1]:
        raise ArityError(f"{len(names)} feature names for {values.shape[1]} columns")
    thresholds = [_column_thresholds(name, values[:, i], k) for i, name in enumerate(names)]
    summaries = [
        FeatureSummary(
            minimum=float(values[:, i].min()),
            maximum=float(values[:, i].max()),
            median=float(np.median(values[:, i])),
        )
        for i in range(values.shape[1])
    ]
    binarizer = Binarizer(feature_names=names, thresholds=thresholds, summaries=summaries)
    logger.info("Binarizer fitted: {} raw features -> {} bits", binarizer.n_raw_features, binarizer.n_bits)
    return binarizer


def encode_matrix(raw: np.ndarray, b: Binarizer) -> np.ndarray:
    """Bit j of feature f is 1 iff the value is strictly greater than threshold j of f."""
    values = np.atleast_2d(np.asarray(raw, dtype=float))
    if values.shape[1] != b.n_raw_features:
        raise ArityError(f"Expected {b.n_raw_features} raw features, got {values.shape[1]}")
    blocks = [values[:, [i]] > np.asarray(t, dtype=float)[np.newaxis, :] for i, t in enumerate(b.thresholds)]
    return np.concatenate(blocks, axis=1) if blocks else np.zeros((values.shape[0], 0), dtype=bool)


def encode(x_real: np.ndarray, b: Binarizer) -> np.ndarray:
    values = np.asarray(x_real, dtype=float)
    if values.ndim != 1:
        raise ArityError(f"Expected a single raw vector, got shape {values.shape}")
    return encode_matrix(values[np.newaxis, :], b)[0]


def _read_frame(path: Path) -> pd.DataFrame:
    if not path.is_file():
        raise DatasetNotFoundError(f"Dataset {path} does not exist")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError(f"Dataset {path} is empty")
    except pd.errors.ParserError as pe:
        raise MalformedRowError(f"Dataset {path} is malformed: {pe}")
    if frame.empty:
        raise EmptyDatasetError(f"Dataset {path} has a header but no rows")
    return frame


def _parse_features(path: Path, frame: pd.DataFrame, columns: list[str]) -> np.ndarray:
    numeric = frame[columns].apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna().to_numpy()
    if bad.any():
        row, col = np.argwhere(bad)[0]
        # data rows start on line 2, after the header
        raise MalformedRowError(
            f"Row {int(row) + 2} of {path}: column {columns[int(col)]} "
            f"has non-numeric value {frame[columns[int(col)]].iloc[int(row)]!r}"
        )
    return numeric.to_numpy(dtype=float)


def load_csv(
    path: Path,
    label_column: str | None = "label",
    feature_columns: list[str] | None = None,
) -> RawTable:
    """
    Read a CSV with a header row. Features are every non-label column unless
    ``feature_columns`` is given. String labels map to dense class ids in
    lexicographic order. ``label_column=None`` reads unlabeled rows.
    """
    path = Path(path)
    frame = _read_frame(path)
    header = [str(c).strip() for c in frame.columns]
    frame.columns = pd.Index(header)
    if label_column is not None and label_column not in header:
        raise MissingColumnError(f"Label column {label_column!r} not found in {path}; columns are {header}")
    columns = feature_columns if feature_columns is not None else [c for c in header if c != label_column]
    missing = [c for c in columns if c not in header]
    if missing:
        raise MissingColumnError(f"Feature columns {missing} not found in {path}")
    if not columns:
        raise MissingColumnError(f"{path} has no feature columns")
    values = _parse_features(path, frame, columns)
    if label_column is None:
        return RawTable(values=values, feature_names=columns)
    raw_labels = frame[label_column].fillna("").astype(str).str.strip()
    empty = np.flatnonzero((raw_labels == "").to_numpy())
    if empty.size:
        raise MalformedRowError(f"Row {int(empty[0]) + 2} of {path} has an empty label")
    class_names = sorted(raw_labels.unique())
    labels = np.searchsorted(np.asarray(class_names), raw_labels.to_numpy()).astype(np.int64)
    logger.info("Loaded {} rows, {} features, {} classes from {}", len(frame), len(columns), len(class_names), path)
    return RawTable(values=values, feature_names=columns, labels=labels, class_names=class_names)


def to_dataset(table: RawTable, b: Binarizer) -> Dataset:
    if table.labels is None or table.class_names is None:
        raise MissingColumnError("A labeled table is required to build a dataset")
    return Dataset(
        x=encode_matrix(table.values, b),
        y=table.labels,
        class_names=list(table.class_names),
        feature_names=b.bit_names(),
    )


def split_indices(y: np.ndarray, test_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Stratified train/test indices. Falls back to training on everything when stratification is impossible."""
    if not 0.0 <= test_fraction < 1.0:
        raise ConfigError(f"Test fraction must be in [0, 1), got {test_fraction}")
    index = np.arange(len(y))
    if test_fraction == 0.0:
        return index, index[:0]
    try:
        train, test = train_test_split(index, test_size=test_fraction, stratify=y, random_state=seed)
    except ValueError as ve:
        logger.warning("Stratified split not possible ({}); training and scoring on the full dataset", ve)
        return index, index[:0]
    return np.sort(train), np.sort(test)


def truth_table(name: str) -> RawTable:
    """Two-input truth table over inputs (0,0), (0,1), (1,0), (1,1)."""
    if name not in TRUTH_TABLES:
        raise ConfigError(f"Unknown truth table {name!r}; expected one of {sorted(TRUTH_TABLES)}")
    inputs = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
    return RawTable(
        values=inputs,
        feature_names=["x0", "x1"],
        labels=np.asarray(TRUTH_TABLES[name], dtype=np.int64),
        class_names=["0", "1"],
    )


def write_truth_table(name: str, path: Path, repeats: int = 1) -> Path:
    table = truth_table(name)
    frame = pd.DataFrame(np.tile(table.values, (repeats, 1)).astype(int), columns=table.feature_names)
    frame["label"] = np.tile(table.labels, repeats)
    frame.to_csv(path, index=False)
    return path
