from __future__ import annotations

from typing import List

from pydantic import BaseModel, Field


class ValidationError(BaseModel):
    errors: List[str]


class SystemErr(BaseModel):
    error: str


class PredictRequest(BaseModel):
    rows: List[List[float]] = Field(
        ...,
        description="Raw (not yet binarized) feature rows, in the column order the model was trained with",
        examples=[[[5.1, 3.5, 1.4, 0.2], [6.7, 3.0, 5.2, 2.3]]],
    )


class PredictResponse(BaseModel):
    labels: List[str]
    class_ids: List[int]
    vote_sums: List[List[int]] = Field(
        ...,
        description="Per row, the vote sum of every class machine (one entry for a two-class model)",
    )


class RuleItem(BaseModel):
    class_name: str
    text: str = Field(..., examples=["(x2 ∧ ¬x9) ∨ x14"])
    terms: List[List[int]] = Field(
        ...,
        description="Signed 1-based literal ids per term: +k is feature k-1, -k its negation",
    )


class RulesResponse(BaseModel):
    top_k: int
    rules: List[RuleItem]
