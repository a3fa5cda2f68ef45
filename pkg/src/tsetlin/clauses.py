"""Clause evaluation, weighted voting and class prediction."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Sequence

import numpy as np

from src.tsetlin.automata import StateMatrix


class Mode(StrEnum):
    TRAIN = "train"
    INFER = "infer"


def literals(x: Sequence[int] | np.ndarray) -> np.ndarray:
    """Features followed by their negations: ``[x_0..x_{o-1}, ¬x_0..¬x_{o-1}]``."""
    bits = np.asarray(x).astype(bool).ravel()
    if bits.size == 0:
        raise ValueError("Input vector must contain at least one feature")
    return np.concatenate([bits, ~bits])


def literal_matrix(x: np.ndarray) -> np.ndarray:
    """Row-wise ``literals`` for a batch of shape (m, o)."""
    bits = np.asarray(x).astype(bool)
    if bits.ndim != 2 or bits.shape[1] == 0:
        raise ValueError(f"Expected a (m, o) Boolean matrix with o >= 1, got shape {bits.shape}")
    return np.concatenate([bits, ~bits], axis=1)


def polarity(n_clauses: int) -> np.ndarray:
    # clause number j = index + 1; odd-numbered clauses vote for the class
    signs = np.full(n_clauses, -1, dtype=np.int64)
    signs[0::2] = 1
    return signs


def eval_clause(include_row: np.ndarray, lit: np.ndarray, mode: Mode) -> int:
    include_row = np.asarray(include_row, dtype=bool)
    lit = np.asarray(lit, dtype=bool)
    if include_row.shape != lit.shape:
        raise ValueError(f"Include row length {include_row.shape} does not match literal length {lit.shape}")
    if not include_row.any():
        return 1 if mode == Mode.TRAIN else 0
    return int(not np.any(include_row & ~lit))


def clause_outputs(include: np.ndarray, lit: np.ndarray, mode: Mode) -> np.ndarray:
    """Vectorised ``eval_clause`` over all rows of an include mask."""
    if include.shape[1] != lit.shape[0]:
        raise ValueError(f"Include mask has {include.shape[1]} literals, input has {lit.shape[0]}")
    fired = ~np.any(include & ~lit, axis=1)
    if mode == Mode.INFER:
        fired &= include.any(axis=1)
    return fired


def batch_clause_outputs(include: np.ndarray, lits: np.ndarray) -> np.ndarray:
    """Inference-mode clause outputs for a batch of literal vectors, shape (m, n)."""
    if include.shape[1] != lits.shape[1]:
        raise ValueError(f"Include mask has {include.shape[1]} literals, inputs have {lits.shape[1]}")
    violations = (~lits).astype(np.int32) @ include.T.astype(np.int32)
    return (violations == 0) & include.any(axis=1)[np.newaxis, :]


@dataclass(frozen=True)
class ClauseBank:
    include: np.ndarray
    weights: np.ndarray
    polarity: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        if self.include.ndim != 2:
            raise ValueError("Include mask must be a 2-D matrix")
        if self.weights.shape != (self.include.shape[0],):
            raise ValueError(f"Expected {self.include.shape[0]} weights, got shape {self.weights.shape}")
        if np.any(self.weights < 0):
            raise ValueError("Clause weights must be non-negative")
        object.__setattr__(self, "polarity", polarity(self.include.shape[0]))

    @classmethod
    def from_states(cls, states: StateMatrix, weights: np.ndarray) -> ClauseBank:
        return cls(include=states.include_mask(), weights=np.asarray(weights, dtype=np.int64))

    @property
    def n_clauses(self) -> int:
        return int(self.include.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.include.shape[1] // 2)

    def signed_weights(self) -> np.ndarray:
        return self.polarity * self.weights


def vote_sum(bank: ClauseBank, lit: np.ndarray, mode: Mode) -> int:
    fired = clause_outputs(bank.include, lit, mode)
    return int(bank.signed_weights() @ fired.astype(np.int64))


def batch_vote_sums(bank: ClauseBank, lits: np.ndarray) -> np.ndarray:
    return batch_clause_outputs(bank.include, lits).astype(np.int64) @ bank.signed_weights()


@dataclass(frozen=True)
class Prediction:
    vote_sum: int
    label: int
    class_votes: tuple[int, ...]


def decide_binary(v: int, tie_to_zero: bool = True) -> int:
    # tie_to_zero: a zero vote sum predicts class 0
    return int(v >= 1) if tie_to_zero else int(v >= 0)


def predict(banks: Sequence[ClauseBank], x: Sequence[int] | np.ndarray, tie_to_zero: bool = True) -> Prediction:
    """
    Binary (one bank): label 1 iff the vote sum clears the decision rule.
    Multiclass: argmax over per-class vote sums, ties to the lowest class id.
    """
    if len(banks) == 0:
        raise ValueError("At least one clause bank is required")
    lit = literals(x)
    votes = tuple(vote_sum(bank, lit, Mode.INFER) for bank in banks)
    if len(banks) == 1:
        return Prediction(vote_sum=votes[0], label=decide_binary(votes[0], tie_to_zero), class_votes=votes)
    label = int(np.argmax(votes))
    return Prediction(vote_sum=votes[label], label=label, class_votes=votes)
