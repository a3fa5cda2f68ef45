from functools import lru_cache
from pathlib import Path
from typing import Annotated

from fastapi import Depends
from loguru import logger

from src.models.service_error import ServiceError
from src.services.model_service import ModelService
from src.services.persistence_service import TrainedModel, load_model
from src.settings.tsetlin_settings import TsetlinSettings


@lru_cache
def get_tsetlin_settings() -> TsetlinSettings:
    return TsetlinSettings()


TsetlinSettingsDep = Annotated[TsetlinSettings, Depends(get_tsetlin_settings)]


@lru_cache
def load_served_model(model_path: str) -> TrainedModel:
    return load_model(Path(model_path))


def get_model_service(settings: TsetlinSettingsDep) -> ModelService:
    if settings.model_path is None:
        return ModelService(None)
    try:
        return ModelService(load_served_model(settings.model_path))
    except ServiceError as se:
        logger.error("Unable to load model {}: {}", settings.model_path, se.error_msg)
        return ModelService(None, load_error=se.error_msg)


ModelServiceDep = Annotated[ModelService, Depends(get_model_service)]
