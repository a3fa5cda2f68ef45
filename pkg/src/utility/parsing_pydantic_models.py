from pathlib import Path
from typing import Type, TypeVar

import pydantic
import yaml
from loguru import logger
from pydantic import BaseModel

from src.models.api_models import ValidationError
from src.models.service_error import ConfigError

T = TypeVar("T", bound=BaseModel)


def parse_yaml_with_model(yaml_data: dict | str, model: Type[T]) -> T | ValidationError:
    """
    Parse YAML data using a Pydantic model.

    Args:
        yaml_data (dict | str): Either an already loaded mapping or a YAML string.
        model (Type[T]): The Pydantic model class to use for parsing.

    Returns:
        T | ValidationError: An instance of ``model``, or a ValidationError listing
            every field that failed validation.

    Example:
        >>> parse_yaml_with_model("n_clauses: 4\\nt_margin: 2\\ns: 3.0", TMConfig)
        TMConfig(n_clauses=4, t_margin=2, s=3.0, ...)

    Raises:
        Exception: If an unexpected error occurs during parsing.
    """
    try:
        if isinstance(yaml_data, str):
            yaml_dict = yaml.safe_load(yaml_data)
        else:
            yaml_dict = yaml_data
        if yaml_dict is None:
            yaml_dict = {}
        if not isinstance(yaml_dict, dict):
            return ValidationError(errors=[f"Expected a mapping, got {type(yaml_dict).__name__}"])

        return model(**yaml_dict)
    except pydantic.ValidationError as ve:
        error_msg = "Failed to parse the configuration. Details: \n"
        logger.debug(error_msg)
        combined = [
            error_msg
            + " , \n".join(
                map(
                    str,
                    ve.errors(include_url=False, include_context=False, include_input=False),
                )
            )
        ]
        return ValidationError(errors=combined)
    except Exception as e:
        logger.exception("Unexpected error")
        raise e


def load_yaml_file(path: Path, model: Type[T]) -> T:
    """Read a YAML file into ``model``, raising ConfigError on a missing file, bad YAML or invalid fields."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file {path} does not exist")
    try:
        parsed = parse_yaml_with_model(path.read_text(encoding="utf-8"), model)
    except yaml.YAMLError as ye:
        raise ConfigError(f"Config file {path} is not valid YAML: {ye}")
    if isinstance(parsed, ValidationError):
        raise ConfigError(f"Invalid config file {path}: {' '.join(parsed.errors)}")
    return parsed
