"""Per-class DNF rules of a trained model, as text and JSON."""

from __future__ import annotations

import json
from pathlib import Path

from loguru import logger
from pydantic import BaseModel

from src.models.constants import DEFAULT_TOP_K
from src.models.service_error import ConfigError
from src.services.persistence_service import TrainedModel
from src.tsetlin.interpret import class_dnf

RULES_TEXT_FILE = "rules.txt"
RULES_JSON_FILE = "rules.json"


class ClassRule(BaseModel):
    class_name: str
    text: str
    terms: list[list[int]]


def class_rules(model: TrainedModel, top_k: int = DEFAULT_TOP_K) -> list[ClassRule]:
    """
    One rule per class machine. A two-class model has a single machine voting
    for the second class, so it yields one rule for that class.
    """
    if top_k < 1:
        raise ConfigError(f"--top-k must be >= 1, got {top_k}")
    banks = model.classifier.banks()
    names = model.class_names[1:] if model.classifier.is_binary else model.class_names
    rules = []
    for name, bank in zip(names, banks):
        if not bank.weights.any():
            logger.warning("Class {} has all-zero clause weights; is the model trained?", name)
        expression = class_dnf(bank, top_k)
        rules.append(ClassRule(class_name=name, text=expression.render(), terms=expression.to_json()))
    return rules


def render_rules(rules: list[ClassRule]) -> str:
    return "\n".join(f"Class {r.class_name}: {r.text}" for r in rules) + "\n"


def rules_json(rules: list[ClassRule]) -> dict[str, list[list[int]]]:
    return {r.class_name: r.terms for r in rules}


def write_rules(rules: list[ClassRule], directory: Path) -> tuple[Path, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    text_path = directory / RULES_TEXT_FILE
    json_path = directory / RULES_JSON_FILE
    text_path.write_text(render_rules(rules), encoding="utf-8")
    json_path.write_text(json.dumps(rules_json(rules), indent=2, ensure_ascii=False), encoding="utf-8")
    logger.info("Rules written to {} and {}", text_path, json_path)
    return text_path, json_path
