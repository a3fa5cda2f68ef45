from __future__ import annotations

from pathlib import Path

import pandas as pd
from pydantic import BaseModel, Field, computed_field

from src.models.constants import HISTORY_COLUMNS


class ClauseLengthStats(BaseModel):
    mean_positive: float = 0.0
    max_positive: int = 0
    mean_negative: float = 0.0
    max_negative: int = 0
    mean_all: float = 0.0
    max_all: int = 0


class EpochRecord(BaseModel):
    epoch: int
    accuracy: float
    mean_clause_len_pos: float
    mean_clause_len_neg: float
    mean_weight: float


class TrainHistory(BaseModel):
    records: list[EpochRecord] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def final_accuracy(self) -> float | None:
        return self.records[-1].accuracy if self.records else None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.model_dump() for r in self.records], columns=HISTORY_COLUMNS)

    def to_csv(self, path: Path) -> None:
        self.to_frame().to_csv(path, index=False)


class EvalReport(BaseModel):
    accuracy: float
    n_samples: int
    class_names: list[str]
    confusion: list[list[int]] = Field(description="Rows are true classes, columns predicted classes")


class TrainReport(BaseModel):
    train_accuracy: float
    test_accuracy: float | None = None
    n_train: int
    n_test: int
    n_features: int
    class_names: list[str]
    history: TrainHistory


class BoundReport(BaseModel):
    k: int
    bound: float | None
    r: float
    gamma: float | None
    converged: bool
    binary_input: bool = False

    @computed_field  # type: ignore[misc]
    @property
    def within_bound(self) -> bool:
        return self.bound is not None and self.k <= self.bound


class BenchRow(BaseModel):
    s: float
    seed: int
    epochs_to_target: int | None = Field(description="None when the epoch cap was reached first")
    seconds_per_epoch: float
    memory_bytes: int
    mean_clause_length: float

    @property
    def epochs_label(self) -> str:
        return str(self.epochs_to_target) if self.epochs_to_target is not None else "not reached"


class BenchReport(BaseModel):
    target_accuracy: float
    epoch_cap: int
    rows: list[BenchRow] = Field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "s": r.s,
                    "seed": r.seed,
                    "epochs_to_target": r.epochs_label,
                    "seconds_per_epoch": r.seconds_per_epoch,
                    "memory_bytes": r.memory_bytes,
                    "mean_clause_length": r.mean_clause_length,
                }
                for r in self.rows
            ],
            columns=["s", "seed", "epochs_to_target", "seconds_per_epoch", "memory_bytes", "mean_clause_length"],
        )

    def median_epochs(self, s: float) -> float | None:
        """Median epochs to target for one s; runs that hit the cap count as cap + 1."""
        epochs = [
            r.epochs_to_target if r.epochs_to_target is not None else self.epoch_cap + 1 for r in self.rows if r.s == s
        ]
        return float(pd.Series(epochs).median()) if epochs else None
