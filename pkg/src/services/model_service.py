from __future__ import annotations

import numpy as np
from loguru import logger

from src.models.api_models import (
    PredictRequest,
    PredictResponse,
    RuleItem,
    RulesResponse,
    SystemErr,
    ValidationError,
)
from src.models.model_file import ModelSummary
from src.models.service_error import InputError, ServiceError
from src.services.persistence_service import TrainedModel
from src.services.rules_service import class_rules

NO_MODEL_ERROR = "No model is loaded. Set TM_MODEL_PATH to a model file written by `wtm train`."


class ModelService:
    """Serves one trained model. Every method returns an error payload instead of raising."""

    def __init__(self, model: TrainedModel | None, load_error: str | None = None):
        self.model = model
        self.load_error = load_error

    def _unavailable(self) -> SystemErr:
        return SystemErr(error=self.load_error or NO_MODEL_ERROR)

    def predict(self, request: PredictRequest) -> PredictResponse | ValidationError | SystemErr:
        if self.model is None:
            return self._unavailable()
        if not request.rows:
            return PredictResponse(labels=[], class_ids=[], vote_sums=[])
        widths = {len(row) for row in request.rows}
        if widths != {self.model.n_raw_features}:
            return ValidationError(
                errors=[f"Every row must have {self.model.n_raw_features} values, got lengths {sorted(widths)}"]
            )
        try:
            raw = np.asarray(request.rows, dtype=float)
            ids = self.model.predict_ids(raw)
            votes = self.model.vote_sums(raw)
            logger.info("Predicted {} rows", len(ids))
            return PredictResponse(
                labels=[self.model.class_names[i] for i in ids],
                class_ids=ids.tolist(),
                vote_sums=votes.tolist(),
            )
        except InputError as ie:
            return ValidationError(errors=[ie.error_msg])
        except ServiceError as se:
            return SystemErr(error=se.error_msg)

    def rules(self, top_k: int) -> RulesResponse | ValidationError | SystemErr:
        if self.model is None:
            return self._unavailable()
        try:
            rules = class_rules(self.model, top_k)
        except InputError as ie:
            return ValidationError(errors=[ie.error_msg])
        return RulesResponse(top_k=top_k, rules=[RuleItem(**r.model_dump()) for r in rules])

    def summary(self) -> ModelSummary | SystemErr:
        if self.model is None:
            return self._unavailable()
        return self.model.summary()
