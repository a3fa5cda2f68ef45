from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.constants import DEFAULT_BITS_PER_FEATURE


class TMConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_clauses: int = Field(default=50, ge=2, description="Clauses per class machine, half of each polarity")
    t_margin: int = Field(default=15, ge=1, description="Voting margin T")
    s: float = Field(default=3.9, ge=1.0, description="Specificity")
    big_n: int = Field(default=100, ge=1, description="States per action side (2N states in total)")
    boost_true_positive: bool = False
    learnable_t: bool = False
    tie_to_zero: bool = True
    seed: int = 42
    epochs: int = Field(default=50, ge=1)
    initial_weight: int = Field(default=1, ge=0)
    bits_per_feature: int = Field(
        default=DEFAULT_BITS_PER_FEATURE, ge=1, description="Thermometer thresholds per raw feature"
    )

    @field_validator("n_clauses")
    @classmethod
    def check_n_clauses(cls, value: int) -> int:
        if value % 2 != 0:
            raise ValueError(f"n_clauses must be even (half positive, half negative), got {value}")
        return value

    @property
    def states(self) -> int:
        return 2 * self.big_n
