import unittest

import numpy as np
import pytest

from src.tsetlin.dnf import (
    DnfExpression,
    Term,
    all_assignments,
    complement,
    equivalent,
    render_literal,
    simplify,
)

O = 3  # x0..x2 are ids 0..2, ¬x0..¬x2 are ids 3..5


def dnf(*terms, n_features=O):
    return DnfExpression(tuple(Term.of(t) for t in terms), n_features)


class TestSimplify(unittest.TestCase):
    def test_absorption(self):
        self.assertEqual(simplify(dnf([1], [1, 2])), dnf([1]))

    def test_contradiction_dropped(self):
        self.assertEqual(simplify(dnf([1, 4], [2])), dnf([2]))

    def test_duplicates_dropped(self):
        self.assertEqual(simplify(dnf([0, 2], [2, 0])), dnf([0, 2]))

    def test_complementary_pair_merged(self):
        self.assertEqual(simplify(dnf([1, 2], [1, 5])), dnf([1]))

    def test_unit_literal_resolution(self):
        # x0 ∨ (¬x0 ∧ x1) == x0 ∨ x1
        self.assertEqual(simplify(dnf([0], [3, 1])), dnf([0], [1]))

    def test_all_contradictions_give_constant_false(self):
        simplified = simplify(dnf([0, 3], [1, 4]))
        self.assertTrue(simplified.is_constant_false)
        self.assertEqual(simplified.render(), "⊥")

    def test_fixpoint(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            terms = [rng.choice(2 * O, size=rng.integers(1, 4), replace=False) for _ in range(rng.integers(0, 6))]
            once = simplify(dnf(*terms))
            self.assertEqual(simplify(once), once)


def test_equivalent():
    assert equivalent(dnf([1]), dnf([1, 2], [1, 5]))
    assert not equivalent(dnf([1]), dnf([2]))


def test_equivalent_rejects_large_arity():
    big = DnfExpression((), 21)
    with pytest.raises(ValueError):
        equivalent(big, big)


def test_simplify_preserves_semantics_on_random_expressions():
    rng = np.random.default_rng(1)
    n_features = 8
    for _ in range(1000):
        terms = [
            rng.choice(2 * n_features, size=rng.integers(1, 5), replace=False) for _ in range(rng.integers(0, 8))
        ]
        e = dnf(*terms, n_features=n_features)
        assert equivalent(simplify(e), e)


def test_render():
    assert dnf([0, 4], [2]).render() == "(x0 ∧ ¬x1) ∨ x2"
    assert dnf([0, 4]).render() == "x0 ∧ ¬x1"
    assert dnf([]).render() == "⊤"
    assert render_literal(5, O) == "¬x2"


def test_parse_inverts_render():
    rng = np.random.default_rng(3)
    for _ in range(300):
        terms = [rng.choice(2 * O, size=rng.integers(1, 4), replace=False) for _ in range(rng.integers(0, 5))]
        e = simplify(dnf(*terms))
        assert DnfExpression.parse(e.render(), O) == e


def test_json_form_uses_signed_one_based_ids():
    e = dnf([0, 4], [2])
    assert e.to_json() == [[1, -2], [3]]
    assert DnfExpression.from_json(e.to_json(), O) == e


def test_json_rejects_zero_id():
    with pytest.raises(ValueError):
        DnfExpression.from_json([[0]], O)


def test_parse_rejects_out_of_range_literal():
    with pytest.raises(ValueError):
        DnfExpression.parse("x7", O)


def test_all_assignments_enumerates_inputs():
    table = all_assignments(3)
    assert table.shape == (8, 3)
    assert len({tuple(r) for r in table}) == 8


def test_complement_is_an_involution():
    for lit in range(2 * O):
        assert complement(complement(lit, O), O) == lit
