import json

import pytest

from src.models.service_error import ConfigError
from src.services.rules_service import class_rules, render_rules, rules_json, write_rules
from tests.helpers import XOR_CLAUSES, make_machine, make_model, xor_rule_model


def test_binary_model_has_one_rule_for_the_positive_class():
    rules = class_rules(xor_rule_model(), top_k=10)
    assert len(rules) == 1
    assert rules[0].class_name == "1"
    assert rules[0].text == "(x0 ∧ ¬x1) ∨ (x1 ∧ ¬x0)"
    assert rules[0].terms == [[1, -2], [2, -1]]


def test_top_k_keeps_the_heaviest_clause():
    rules = class_rules(xor_rule_model(), top_k=1)
    assert rules[0].text == "x0 ∧ ¬x1"


def test_multiclass_rules_follow_class_order():
    machines = [
        make_machine([[0], [1]], 2),
        make_machine([[1], [0]], 2),
        make_machine([[2, 3], [0]], 2),
    ]
    rules = class_rules(make_model(machines, ["a", "b", "c"]), top_k=5)
    assert [r.class_name for r in rules] == ["a", "b", "c"]
    assert [r.text for r in rules] == ["x0", "x1", "¬x0 ∧ ¬x1"]


def test_zero_weights_give_constant_false(caplog_loguru):
    rules = class_rules(xor_rule_model(weights=(0, 0, 0, 0)), top_k=3)
    assert rules[0].text == "⊥"
    assert rules[0].terms == []
    assert "all-zero clause weights" in caplog_loguru.text


def test_rejects_non_positive_top_k():
    with pytest.raises(ConfigError):
        class_rules(xor_rule_model(), top_k=0)


def test_render_and_json():
    rules = class_rules(make_model([make_machine(XOR_CLAUSES, 2)], ["no", "yes"]), top_k=10)
    assert render_rules(rules) == "Class yes: (x0 ∧ ¬x1) ∨ (x1 ∧ ¬x0)\n"
    assert rules_json(rules) == {"yes": [[1, -2], [2, -1]]}


def test_write_rules(tmp_path):
    text_path, json_path = write_rules(class_rules(xor_rule_model()), tmp_path / "out")
    assert text_path.read_text(encoding="utf-8").startswith("Class 1: ")
    assert json.loads(json_path.read_text(encoding="utf-8")) == {"1": [[1, -2], [2, -1]]}
