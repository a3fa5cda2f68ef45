"""Rule extraction from clause banks."""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.models.constants import DEFAULT_TOP_K
from src.models.reports import ClauseLengthStats
from src.tsetlin.clauses import ClauseBank
from src.tsetlin.dnf import CONSTANT_FALSE, ConstantFalse, DnfExpression, Term, simplify


def extract_term(include_row: np.ndarray) -> Term | ConstantFalse:
    row = np.asarray(include_row, dtype=bool)
    if row.ndim != 1 or row.size % 2 != 0:
        raise ValueError(f"Include row must have even length 2o, got shape {row.shape}")
    term = Term.of(np.flatnonzero(row))
    if term.is_contradictory(row.size // 2):
        return CONSTANT_FALSE
    return term


def top_positive_clauses(bank: ClauseBank, top_k: int = DEFAULT_TOP_K) -> list[int]:
    """Indices of the ``top_k`` heaviest positive clauses with non-zero weight; ties go to the lower index."""
    candidates = [int(i) for i in np.flatnonzero((bank.polarity > 0) & (bank.weights > 0))]
    candidates.sort(key=lambda i: (-int(bank.weights[i]), i))
    return candidates[:top_k]


def class_dnf(bank: ClauseBank, top_k: int = DEFAULT_TOP_K) -> DnfExpression:
    """OR of the ``top_k`` highest weighted positive clauses, simplified. Weights do not enter the OR."""
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    chosen = top_positive_clauses(bank, top_k)
    if not chosen:
        logger.warning("No positive clause with non-zero weight; the rule is constant false")
        return DnfExpression((), bank.n_features)
    terms = []
    for i in chosen:
        term = extract_term(bank.include[i])
        if isinstance(term, ConstantFalse):
            continue
        if term.is_constant_true:
            logger.warning("Clause {} includes no literal and never fires at inference; skipped", i)
            continue
        terms.append(term)
    if not terms:
        logger.warning("None of the top {} clauses can fire; the rule is constant false", top_k)
    return simplify(DnfExpression(tuple(terms), bank.n_features))


def clause_length_stats(bank: ClauseBank) -> ClauseLengthStats:
    lengths = bank.include.sum(axis=1)
    positive = lengths[bank.polarity > 0]
    negative = lengths[bank.polarity < 0]

    def _mean(a: np.ndarray) -> float:
        return float(a.mean()) if a.size else 0.0

    def _max(a: np.ndarray) -> int:
        return int(a.max()) if a.size else 0

    return ClauseLengthStats(
        mean_positive=_mean(positive),
        max_positive=_max(positive),
        mean_negative=_mean(negative),
        max_negative=_max(negative),
        mean_all=_mean(lengths),
        max_all=_max(lengths),
    )
