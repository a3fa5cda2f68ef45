import unittest

import numpy as np
import pytest

from src.tsetlin.clauses import (
    ClauseBank,
    Mode,
    batch_vote_sums,
    clause_outputs,
    decide_binary,
    eval_clause,
    literal_matrix,
    literals,
    polarity,
    predict,
    vote_sum,
)
from tests.helpers import include_row, make_bank

# o = 2: x0 -> 0, x1 -> 1, ¬x0 -> 2, ¬x1 -> 3
XOR_BANK_CLAUSES = [[0, 3], [0, 1], [2, 1], [2, 3]]


@pytest.mark.parametrize(
    "x,expected",
    [([0, 1], [0, 1, 1, 0]), ([1], [1, 0]), ([0, 0, 0], [0, 0, 0, 1, 1, 1])],
)
def test_literals(x, expected):
    np.testing.assert_array_equal(literals(x), np.asarray(expected, dtype=bool))


def test_literal_complement_invariant():
    rng = np.random.default_rng(5)
    x = rng.integers(0, 2, size=(50, 7))
    lits = literal_matrix(x)
    np.testing.assert_array_equal(lits[:, 7:], ~lits[:, :7])


def test_literals_rejects_empty_input():
    with pytest.raises(ValueError):
        literals([])


def test_polarity_alternates_starting_positive():
    np.testing.assert_array_equal(polarity(4), [1, -1, 1, -1])


class TestEvalClause(unittest.TestCase):
    def test_matching_conjunction(self):
        self.assertEqual(eval_clause(include_row([0, 3], 2), literals([1, 0]), Mode.INFER), 1)

    def test_false_included_literal(self):
        self.assertEqual(eval_clause(include_row([0], 2), literals([0, 1]), Mode.INFER), 0)

    def test_empty_clause_depends_on_mode(self):
        empty = include_row([], 2)
        self.assertEqual(eval_clause(empty, literals([0, 1]), Mode.INFER), 0)
        self.assertEqual(eval_clause(empty, literals([0, 1]), Mode.TRAIN), 1)

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            eval_clause(include_row([0], 3), literals([0, 1]), Mode.INFER)

    def test_vectorised_outputs_match_single_clause(self):
        rng = np.random.default_rng(2)
        include = rng.random((20, 8)) < 0.2
        for _ in range(20):
            lit = literals(rng.integers(0, 2, size=4))
            for mode in Mode:
                expected = [eval_clause(row, lit, mode) for row in include]
                np.testing.assert_array_equal(clause_outputs(include, lit, mode), expected)


def test_adding_an_include_never_turns_a_clause_on():
    rng = np.random.default_rng(9)
    for _ in range(200):
        row = rng.random(10) < 0.3
        lit = literals(rng.integers(0, 2, size=5))
        before = eval_clause(row, lit, Mode.INFER)
        extra = row.copy()
        extra[rng.integers(0, 10)] = True
        after = eval_clause(extra, lit, Mode.INFER)
        assert after <= before or not row.any()


def test_vote_sum_arithmetic():
    # rows 0, 2 positive; row 1 negative; row 3 negative and silent
    bank = make_bank([[0], [0], [0], [2]], 2, weights=[2, 1, 3, 4])
    assert vote_sum(bank, literals([1, 0]), Mode.INFER) == 4


def test_vote_sum_without_firing_clauses():
    bank = make_bank([[0], [1]], 2)
    assert vote_sum(bank, literals([0, 0]), Mode.INFER) == 0


@pytest.mark.parametrize("x,expected", [([0, 0], -1), ([0, 1], 1), ([1, 0], 1), ([1, 1], -1)])
def test_hand_built_xor_bank(x, expected):
    bank = make_bank(XOR_BANK_CLAUSES, 2)
    assert vote_sum(bank, literals(x), Mode.INFER) == expected
    assert predict([bank], x).label == int(expected > 0)


def test_batch_vote_sums_match_single_sample():
    rng = np.random.default_rng(4)
    bank = ClauseBank(include=rng.random((10, 12)) < 0.15, weights=rng.integers(0, 5, size=10))
    x = rng.integers(0, 2, size=(30, 6))
    expected = [vote_sum(bank, literals(row), Mode.INFER) for row in x]
    np.testing.assert_array_equal(batch_vote_sums(bank, literal_matrix(x)), expected)


def test_zero_vote_sum_predicts_zero():
    # positive clauses x0 ∧ ¬x1 and ¬x0 ∧ ¬x1 on x = (0, 1): neither fires
    bank = make_bank([[0, 3], [], [2, 3], []], 2)
    prediction = predict([bank], [0, 1])
    assert prediction.vote_sum == 0
    assert prediction.label == 0


def test_tie_can_go_to_one():
    assert decide_binary(0, tie_to_zero=False) == 1
    assert decide_binary(0, tie_to_zero=True) == 0
    assert decide_binary(1) == 1
    assert decide_binary(-3) == 0


def test_single_heavy_positive_clause():
    bank = make_bank([[0], []], 1, weights=[5, 1])
    prediction = predict([bank], [1])
    assert prediction.vote_sum == 5
    assert prediction.label == 1


def test_multiclass_argmax_and_ties():
    fires = make_bank([[0], []], 1, weights=[3, 0])
    weaker = make_bank([[0], []], 1, weights=[2, 0])
    same = make_bank([[0], []], 1, weights=[3, 0])
    assert predict([weaker, fires, same], [1]).label == 1
    assert predict([weaker, fires, same], [1]).class_votes == (2, 3, 3)


def test_predict_is_deterministic():
    rng = np.random.default_rng(8)
    banks = [ClauseBank(include=rng.random((6, 8)) < 0.2, weights=rng.integers(0, 4, size=6)) for _ in range(3)]
    x = rng.integers(0, 2, size=4)
    assert predict(banks, x) == predict(banks, x)


def test_bank_rejects_negative_weights():
    with pytest.raises(ValueError):
        ClauseBank(include=np.zeros((2, 2), dtype=bool), weights=np.array([1, -1]))
