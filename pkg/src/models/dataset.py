from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, model_validator


class FeatureSummary(BaseModel):
    minimum: float
    maximum: float
    median: float


class Binarizer(BaseModel):
    """Per-feature ascending thermometer thresholds, fitted on training data."""

    feature_names: list[str]
    thresholds: list[list[float]]
    summaries: list[FeatureSummary]

    @model_validator(mode="after")
    def check_thresholds(self) -> Binarizer:
        if not (len(self.feature_names) == len(self.thresholds) == len(self.summaries)):
            raise ValueError("feature_names, thresholds and summaries must have one entry per feature")
        for name, values in zip(self.feature_names, self.thresholds):
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError(f"Thresholds of feature {name} must be strictly increasing")
        return self

    @property
    def n_raw_features(self) -> int:
        return len(self.feature_names)

    @property
    def n_bits(self) -> int:
        return sum(len(t) for t in self.thresholds)

    def bit_names(self) -> list[str]:
        return [f"{name}>{t:g}" for name, values in zip(self.feature_names, self.thresholds) for t in values]

    def bit_offsets(self) -> list[int]:
        """Index of the first bit of each raw feature."""
        return list(np.cumsum([0] + [len(t) for t in self.thresholds[:-1]]).astype(int))


@dataclass(frozen=True)
class RawTable:
    values: np.ndarray
    feature_names: list[str]
    labels: np.ndarray | None = None
    class_names: list[str] | None = None

    @property
    def n_samples(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class Dataset:
    x: np.ndarray
    y: np.ndarray
    class_names: list[str]
    feature_names: list[str]

    def __post_init__(self) -> None:
        if self.x.ndim != 2 or self.x.shape[0] != self.y.shape[0]:
            raise ValueError(f"Inconsistent dataset shapes: x {self.x.shape}, y {self.y.shape}")

    @property
    def n_samples(self) -> int:
        return int(self.x.shape[0])

    @property
    def n_classes(self) -> int:
        return len(self.class_names)
