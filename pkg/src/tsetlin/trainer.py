"""
Online training of a single weighted Tsetlin Machine.

One call to ``fit_sample`` is one round of the learning loop: evaluate clauses,
select clauses for feedback, update the integer weights of the selected firing
clauses, move the automata, and optionally adjust the margin T.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from src.models.reports import EpochRecord, TrainHistory
from src.models.tm_config import TMConfig
from src.tsetlin.automata import FeedbackMatrices, StateMatrix, apply_feedback, init_states
from src.tsetlin.clauses import (
    ClauseBank,
    Mode,
    batch_vote_sums,
    clause_outputs,
    decide_binary,
    literal_matrix,
    literals,
    vote_sum,
)
from src.tsetlin.feedback import sample_feedback, select_clauses
from src.tsetlin.interpret import clause_length_stats


class WeightEvent(StrEnum):
    TRUE_POSITIVE = "true_positive"
    FALSE_POSITIVE = "false_positive"
    NO_FIRE = "no_fire"


def update_weight(w: int, event: WeightEvent) -> int:
    """Stochastic searching on the line at resolution 1: integer steps, floored at 0."""
    if w < 0:
        raise ValueError(f"Clause weight must be non-negative, got {w}")
    if event == WeightEvent.TRUE_POSITIVE:
        return w + 1
    if event == WeightEvent.FALSE_POSITIVE:
        return w - 1 if w > 0 else w
    return w


def update_threshold(t: int, correct: bool, learnable_t: bool = True) -> int:
    """T moves against the weights: down after a correct prediction, up after a mistake. Floored at 1."""
    if not learnable_t:
        raise ValueError("update_threshold called with learnable T disabled")
    if t < 1:
        raise ValueError(f"Voting margin T must be >= 1, got {t}")
    return max(1, t - 1) if correct else t + 1


@dataclass
class TsetlinMachine:
    state: StateMatrix
    weights: np.ndarray
    t_margin: int

    @classmethod
    def initialize(cls, cfg: TMConfig, n_features: int, rng: np.random.Generator) -> TsetlinMachine:
        return cls(
            state=init_states(cfg.n_clauses, n_features, cfg.big_n, rng),
            weights=np.full(cfg.n_clauses, cfg.initial_weight, dtype=np.int64),
            t_margin=cfg.t_margin,
        )

    @property
    def n_features(self) -> int:
        return self.state.n_features

    @property
    def n_clauses(self) -> int:
        return self.state.n_clauses

    def bank(self) -> ClauseBank:
        return ClauseBank.from_states(self.state, self.weights)

    def vote_sums(self, x: np.ndarray) -> np.ndarray:
        return batch_vote_sums(self.bank(), literal_matrix(x))

    def predict(self, x: np.ndarray, tie_to_zero: bool = True) -> np.ndarray:
        v = self.vote_sums(x)
        return (v >= 1 if tie_to_zero else v >= 0).astype(np.int64)


@dataclass(frozen=True)
class StepTrace:
    """What one training round did, for instrumentation and tests."""

    vote_sum: int
    correct: bool
    fired: np.ndarray
    selected: np.ndarray
    events: tuple[WeightEvent, ...]
    weight_delta: np.ndarray
    feedback: FeedbackMatrices


def classify_events(fired: np.ndarray, selected: np.ndarray, concordant: np.ndarray) -> tuple[WeightEvent, ...]:
    return tuple(
        WeightEvent.NO_FIRE
        if not (f and sel)
        else (WeightEvent.TRUE_POSITIVE if conc else WeightEvent.FALSE_POSITIVE)
        for f, sel, conc in zip(fired, selected, concordant)
    )


def fit_sample(
    machine: TsetlinMachine,
    x: np.ndarray,
    y: int,
    cfg: TMConfig,
    rng: np.random.Generator,
) -> StepTrace:
    """
    Run one learning round on ``(x, y)``. The machine is updated in place.

    Weights change only for clauses that fired and were selected: +1 when the
    clause polarity agrees with the label, -1 (not below 0) otherwise.
    """
    if y not in (0, 1):
        raise ValueError(f"Binary target expected, got {y}")
    lit = literals(x)
    if lit.shape[0] != machine.state.n_literals:
        raise ValueError(f"Sample has {lit.shape[0] // 2} features, machine expects {machine.n_features}")

    bank = machine.bank()
    fired = clause_outputs(bank.include, lit, Mode.TRAIN)
    # selection uses the inference vote sum; empty clauses fire only for feedback
    v = vote_sum(bank, lit, Mode.INFER)
    correct = decide_binary(v, cfg.tie_to_zero) == y

    selected = select_clauses(v, machine.t_margin, y, machine.n_clauses, rng)
    concordant = (bank.polarity > 0) == (y == 1)
    true_pos = selected & fired & concordant
    false_pos = selected & fired & ~concordant
    delta = true_pos.astype(np.int64) - (false_pos & (machine.weights > 0)).astype(np.int64)

    feedback = sample_feedback(bank, machine.state, lit, y, cfg, rng, selected=selected)

    machine.weights = machine.weights + delta
    machine.state = apply_feedback(machine.state, feedback)
    if cfg.learnable_t:
        machine.t_margin = update_threshold(machine.t_margin, correct)

    return StepTrace(
        vote_sum=v,
        correct=correct,
        fired=fired,
        selected=selected,
        events=classify_events(fired, selected, concordant),
        weight_delta=delta,
        feedback=feedback,
    )


def _check_dataset(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape[0] == 0:
        raise ValueError("Cannot train on an empty dataset")
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"{x.shape[0]} samples but {y.shape[0]} labels")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("Binary machine labels must be 0 or 1")


def fit_epoch(machine: TsetlinMachine, x: np.ndarray, y: np.ndarray, cfg: TMConfig, rng: np.random.Generator) -> None:
    _check_dataset(x, y)
    for i in rng.permutation(x.shape[0]):
        fit_sample(machine, x[i], int(y[i]), cfg, rng)


def epoch_record(epoch: int, accuracy: float, banks: list[ClauseBank]) -> EpochRecord:
    stats = [clause_length_stats(b) for b in banks]
    return EpochRecord(
        epoch=epoch,
        accuracy=accuracy,
        mean_clause_len_pos=float(np.mean([s.mean_positive for s in stats])),
        mean_clause_len_neg=float(np.mean([s.mean_negative for s in stats])),
        mean_weight=float(np.mean(np.concatenate([b.weights for b in banks]))),
    )


def fit(
    machine: TsetlinMachine,
    x: np.ndarray,
    y: np.ndarray,
    cfg: TMConfig,
    rng: np.random.Generator,
) -> TrainHistory:
    """``cfg.epochs`` shuffled passes over the data, recording training accuracy after each."""
    x = np.asarray(x).astype(bool)
    y = np.asarray(y, dtype=np.int64)
    _check_dataset(x, y)
    history = TrainHistory()
    for epoch in range(1, cfg.epochs + 1):
        fit_epoch(machine, x, y, cfg, rng)
        accuracy = float(np.mean(machine.predict(x, cfg.tie_to_zero) == y))
        history.records.append(epoch_record(epoch, accuracy, [machine.bank()]))
    return history
