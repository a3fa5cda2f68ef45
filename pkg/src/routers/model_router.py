from fastapi import APIRouter, Query, Response
from fastapi.encoders import jsonable_encoder
from fastapi.responses import JSONResponse

from src.dependencies import ModelServiceDep, TsetlinSettingsDep
from src.models.api_models import (
    PredictRequest,
    PredictResponse,
    RulesResponse,
    SystemErr,
    ValidationError,
)
from src.models.model_file import ModelSummary

router = APIRouter()


def _json_response(out_response: object) -> Response:
    json_data = jsonable_encoder(out_response)
    if isinstance(out_response, ValidationError):
        return JSONResponse(content=json_data, status_code=400)
    elif isinstance(out_response, SystemErr):
        return JSONResponse(content=json_data, status_code=500)
    return JSONResponse(content=json_data, status_code=200)


@router.post(
    "/v1/predict",
    response_model=None,
    responses={
        200: {"model": PredictResponse},
        400: {"model": ValidationError},
        500: {"model": SystemErr},
    },
    tags=["Inference"],
)
def predict(request: PredictRequest, model_service: ModelServiceDep) -> Response:
    """
    Predict the class of each raw feature row
    """
    return _json_response(model_service.predict(request))


@router.get(
    "/v1/rules",
    response_model=None,
    responses={
        200: {"model": RulesResponse},
        400: {"model": ValidationError},
        500: {"model": SystemErr},
    },
    tags=["Interpretability"],
)
def rules(
    model_service: ModelServiceDep,
    settings: TsetlinSettingsDep,
    top_k: int | None = Query(default=None, ge=1),
) -> Response:
    """
    Per-class DNF built from the highest weighted positive clauses
    """
    return _json_response(model_service.rules(top_k if top_k is not None else settings.default_top_k))


@router.get(
    "/v1/model",
    response_model=None,
    responses={200: {"model": ModelSummary}, 500: {"model": SystemErr}},
    tags=["Interpretability"],
)
def model_summary(model_service: ModelServiceDep) -> Response:
    return _json_response(model_service.summary())
