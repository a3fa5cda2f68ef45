"""
Sum-of-products expressions over literals.

Literal ``k < o`` is ``xk`` and literal ``k + o`` is ``¬xk``. A ``Term`` is a
conjunction of literal ids, an expression is the disjunction of its terms; an
expression without terms is constant false.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from src.models.constants import ORACLE_MAX_ARITY

AND = " ∧ "
OR = " ∨ "
NOT = "¬"
FALSE_SYMBOL = "⊥"
TRUE_SYMBOL = "⊤"

_LITERAL_RE = re.compile(r"^(¬?)x(\d+)$")


def complement(literal: int, n_features: int) -> int:
    return literal + n_features if literal < n_features else literal - n_features


def render_literal(literal: int, n_features: int) -> str:
    return f"x{literal}" if literal < n_features else f"{NOT}x{literal - n_features}"


def parse_literal(token: str, n_features: int) -> int:
    match = _LITERAL_RE.match(token.strip())
    if match is None:
        raise ValueError(f"Not a literal: {token!r}")
    negated, index = match.group(1), int(match.group(2))
    if index >= n_features:
        raise ValueError(f"Literal {token!r} out of range for {n_features} features")
    return index + n_features if negated else index


@dataclass(frozen=True, order=True)
class Term:
    literals: tuple[int, ...]

    @classmethod
    def of(cls, literal_ids: Iterable[int]) -> Term:
        return cls(tuple(sorted({int(i) for i in literal_ids})))

    @property
    def is_constant_true(self) -> bool:
        return len(self.literals) == 0

    def is_contradictory(self, n_features: int) -> bool:
        present = set(self.literals)
        return any(complement(lit, n_features) in present for lit in self.literals)

    def evaluate(self, lits: np.ndarray) -> np.ndarray:
        """Term value for each row of a (m, 2o) literal matrix."""
        if self.is_constant_true:
            return np.ones(lits.shape[0], dtype=bool)
        return np.all(lits[:, list(self.literals)], axis=1)

    def render(self, n_features: int) -> str:
        if self.is_constant_true:
            return TRUE_SYMBOL
        return AND.join(render_literal(lit, n_features) for lit in self.literals)

    def signed(self, n_features: int) -> list[int]:
        return [lit + 1 if lit < n_features else -(lit - n_features + 1) for lit in self.literals]


class ConstantFalse:
    _instance: ConstantFalse | None = None

    def __new__(cls) -> ConstantFalse:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return FALSE_SYMBOL


CONSTANT_FALSE = ConstantFalse()


def all_assignments(n_features: int) -> np.ndarray:
    """Every Boolean input of arity o, shape (2^o, o), in binary counting order."""
    codes = np.arange(2**n_features, dtype=np.int64)[:, np.newaxis]
    return ((codes >> np.arange(n_features, dtype=np.int64)) & 1).astype(bool)


@dataclass(frozen=True)
class DnfExpression:
    terms: tuple[Term, ...]
    n_features: int

    def __post_init__(self) -> None:
        if self.n_features < 1:
            raise ValueError("An expression needs at least one feature")
        for term in self.terms:
            if any(not 0 <= lit < 2 * self.n_features for lit in term.literals):
                raise ValueError(f"Term {term} has literal ids outside [0, {2 * self.n_features})")

    @property
    def is_constant_false(self) -> bool:
        return len(self.terms) == 0

    def evaluate_many(self, x: np.ndarray) -> np.ndarray:
        bits = np.asarray(x).astype(bool)
        lits = np.concatenate([bits, ~bits], axis=1)
        result = np.zeros(bits.shape[0], dtype=bool)
        for term in self.terms:
            result |= term.evaluate(lits)
        return result

    def evaluate(self, x: np.ndarray) -> bool:
        return bool(self.evaluate_many(np.asarray(x).reshape(1, -1))[0])

    def truth_table(self) -> np.ndarray:
        return self.evaluate_many(all_assignments(self.n_features))

    def render(self) -> str:
        if self.is_constant_false:
            return FALSE_SYMBOL
        if len(self.terms) == 1:
            return self.terms[0].render(self.n_features)
        return OR.join(
            f"({t.render(self.n_features)})" if len(t.literals) > 1 else t.render(self.n_features) for t in self.terms
        )

    def to_json(self) -> list[list[int]]:
        return [t.signed(self.n_features) for t in self.terms]

    @classmethod
    def from_json(cls, data: list[list[int]], n_features: int) -> DnfExpression:
        terms = []
        for signed_term in data:
            if any(s == 0 for s in signed_term):
                raise ValueError("Signed literal ids are 1-based; 0 is not allowed")
            terms.append(Term.of(s - 1 if s > 0 else -s - 1 + n_features for s in signed_term))
        return cls(tuple(terms), n_features)

    @classmethod
    def parse(cls, text: str, n_features: int) -> DnfExpression:
        text = text.strip()
        if text == FALSE_SYMBOL:
            return cls((), n_features)
        terms = []
        for chunk in text.split(OR.strip()):
            chunk = chunk.strip()
            if chunk.startswith("(") and chunk.endswith(")"):
                chunk = chunk[1:-1]
            if chunk == TRUE_SYMBOL:
                terms.append(Term(()))
                continue
            terms.append(Term.of(parse_literal(tok, n_features) for tok in chunk.split(AND.strip())))
        return cls(tuple(terms), n_features)


def _simplify_once(terms: set[frozenset[int]], n_features: int) -> set[frozenset[int]]:
    units = {next(iter(t)) for t in terms if len(t) == 1}
    resolved = set()
    for term in terms:
        # l ∨ (¬l ∧ R) == l ∨ R
        blocked = {complement(u, n_features) for u in units} & term
        resolved.add(term - blocked if len(term) > 1 else term)

    merged = set(resolved)
    for term in resolved:
        for lit in term:
            # (R ∧ l) ∨ (R ∧ ¬l) == R
            if (term - {lit}) | {complement(lit, n_features)} in resolved:
                merged.add(term - {lit})

    return {t for t in merged if not any(other < t for other in merged)}


def simplify(e: DnfExpression) -> DnfExpression:
    """
    Drop contradictory and duplicate terms, then apply absorption, unit-literal
    resolution and complementary-pair merging until nothing changes.

    The result is a fixpoint, so simplifying twice gives the same expression.
    """
    terms = {frozenset(t.literals) for t in e.terms if not t.is_contradictory(e.n_features)}
    while True:
        reduced = _simplify_once(terms, e.n_features)
        if reduced == terms:
            break
        terms = reduced
    ordered = sorted((Term.of(t) for t in terms), key=lambda t: (len(t.literals), t.literals))
    return DnfExpression(tuple(ordered), e.n_features)


def equivalent(a: DnfExpression, b: DnfExpression) -> bool:
    """Exhaustive truth-table comparison over all 2^o inputs."""
    if a.n_features != b.n_features:
        raise ValueError(f"Arity mismatch: {a.n_features} vs {b.n_features}")
    if a.n_features > ORACLE_MAX_ARITY:
        raise ValueError(f"Arity {a.n_features} too large for exhaustive comparison (max {ORACLE_MAX_ARITY})")
    return bool(np.array_equal(a.truth_table(), b.truth_table()))
