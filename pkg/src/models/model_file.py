from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

from src.models.constants import MODEL_FORMAT_VERSION
from src.models.dataset import Binarizer
from src.models.tm_config import TMConfig


class MachineRecord(BaseModel):
    n_clauses: int = Field(ge=2)
    n_features: int = Field(ge=1)
    big_n: int = Field(ge=1)
    t_margin: int = Field(ge=1)
    states: list[int] = Field(description="Row-major n_clauses x 2*n_features automaton states")
    weights: list[int]

    @model_validator(mode="after")
    def check_sizes(self) -> MachineRecord:
        if len(self.states) != self.n_clauses * 2 * self.n_features:
            raise ValueError(f"Expected {self.n_clauses * 2 * self.n_features} states, got {len(self.states)}")
        if len(self.weights) != self.n_clauses:
            raise ValueError(f"Expected {self.n_clauses} weights, got {len(self.weights)}")
        return self


class ModelFile(BaseModel):
    format_version: int = MODEL_FORMAT_VERSION
    config: TMConfig
    machines: list[MachineRecord]
    binarizer: Binarizer
    class_names: list[str]
    epochs_trained: int = 0

    @model_validator(mode="after")
    def check_consistency(self) -> ModelFile:
        if len(self.class_names) < 2:
            raise ValueError("A model needs at least two classes")
        expected = 1 if len(self.class_names) == 2 else len(self.class_names)
        if len(self.machines) != expected:
            raise ValueError(f"{len(self.class_names)} classes need {expected} machines, got {len(self.machines)}")
        for machine in self.machines:
            if machine.n_features != self.binarizer.n_bits:
                raise ValueError(f"Machine has {machine.n_features} features, binarizer emits {self.binarizer.n_bits}")
        return self


class ModelSummary(BaseModel):
    class_names: list[str]
    raw_features: list[str]
    n_bits: int
    n_clauses: int
    t_margins: list[int]
    epochs_trained: int
    footprint_bytes: int
