"""
Type I / Type II feedback tables and the stochastic sampling that turns them
into per-automaton moves for one training sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from src.models.tm_config import TMConfig
from src.tsetlin.automata import Action, FeedbackMatrices, StateMatrix
from src.tsetlin.clauses import ClauseBank, Mode, clause_outputs, vote_sum


@dataclass(frozen=True)
class FeedbackProbs:
    p_reward: float
    p_inaction: float
    p_penalty: float

    def __post_init__(self) -> None:
        for p in (self.p_reward, self.p_inaction, self.p_penalty):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"Probability {p} outside [0, 1]")
        if not math.isclose(self.p_reward + self.p_inaction + self.p_penalty, 1.0, abs_tol=1e-12):
            raise ValueError("Reward, inaction and penalty probabilities must sum to 1")

    def moves(self, act: Action) -> tuple[float, float]:
        """
        Probabilities of moving the state up (toward Include) and down (toward Exclude).

        Reward deepens the current action, penalty pushes toward the other one.
        """
        if act == Action.INCLUDE:
            return self.p_reward, self.p_penalty
        return self.p_penalty, self.p_reward


def _probs(reward: Fraction, inaction: Fraction, penalty: Fraction) -> FeedbackProbs:
    return FeedbackProbs(p_reward=float(reward), p_inaction=float(inaction), p_penalty=float(penalty))


def _check_reachable(clause_out: int, literal: int, act: Action) -> None:
    # an included 0-valued literal forces the clause to 0
    assert not (
        clause_out == 1 and literal == 0 and act == Action.INCLUDE
    ), "Unreachable feedback cell: clause output 1 with an included false literal"


def feedback_probability(v: int, t: int, y: int) -> float:
    """Clause selection probability eps / 2T, with the vote sum clamped to [-T, T] first."""
    if t < 1:
        raise ValueError(f"Voting margin T must be >= 1, got {t}")
    clamped = max(-t, min(t, int(v)))
    error = t - clamped if y == 1 else t + clamped
    return error / (2 * t)


def type_i_probs(clause_out: int, literal: int, act: Action, s: float, boost: bool = False) -> FeedbackProbs:
    if s < 1:
        raise ValueError(f"Specificity s must be >= 1, got {s}")
    _check_reachable(clause_out, literal, act)
    inv = 1 / Fraction(s)
    one, zero = Fraction(1), Fraction(0)
    if clause_out == 1 and literal == 1:
        strong = one if boost else one - inv
        if act == Action.INCLUDE:
            return _probs(strong, one - strong, zero)
        return _probs(zero, one - strong, strong)
    if clause_out == 1:
        return _probs(inv, one - inv, zero)
    if act == Action.INCLUDE:
        return _probs(zero, one - inv, inv)
    return _probs(inv, one - inv, zero)


def type_ii_probs(clause_out: int, literal: int, act: Action) -> FeedbackProbs:
    _check_reachable(clause_out, literal, act)
    if clause_out == 1 and literal == 0:
        return FeedbackProbs(p_reward=0.0, p_inaction=0.0, p_penalty=1.0)
    return FeedbackProbs(p_reward=0.0, p_inaction=1.0, p_penalty=0.0)


def _move_tables(table: Callable[[int, int, Action], FeedbackProbs]) -> tuple[np.ndarray, np.ndarray]:
    up = np.zeros((2, 2, 2))
    down = np.zeros((2, 2, 2))
    for clause_out in (0, 1):
        for literal in (0, 1):
            for act in Action:
                if clause_out == 1 and literal == 0 and act == Action.INCLUDE:
                    continue
                up[clause_out, literal, act], down[clause_out, literal, act] = table(clause_out, literal, act).moves(
                    act
                )
    up.setflags(write=False)
    down.setflags(write=False)
    return up, down


@lru_cache(maxsize=32)
def type_i_move_table(s: float, boost: bool) -> tuple[np.ndarray, np.ndarray]:
    """Up/down move probabilities indexed by [clause output, literal, action]."""
    return _move_tables(lambda c, lit, act: type_i_probs(c, lit, act, s, boost))


@lru_cache(maxsize=1)
def type_ii_move_table() -> tuple[np.ndarray, np.ndarray]:
    return _move_tables(type_ii_probs)


def select_clauses(v: int, t: int, y: int, n_clauses: int, rng: np.random.Generator) -> np.ndarray:
    """One Bernoulli(eps / 2T) draw per clause, in clause order."""
    p = feedback_probability(v, t, y)
    return rng.random(n_clauses) < p


def sample_feedback(
    bank: ClauseBank,
    state: StateMatrix,
    lit: np.ndarray,
    y: int,
    cfg: TMConfig,
    rng: np.random.Generator,
    selected: np.ndarray | None = None,
) -> FeedbackMatrices:
    """
    Sample the feedback matrices for one training sample.

    Type I goes to positive clauses when y = 1 and negative clauses when y = 0,
    Type II to the converse. Clause outputs are taken in training mode;
    the selection vote sum, when drawn here, in inference mode.

    Args:
        bank: clause bank whose weights drive the vote sum.
        state: automata states; the current actions come from here.
        lit: literal vector of the sample.
        y: target bit for this machine.
        cfg: machine configuration (T, s, boost).
        rng: the run's generator, consumed clause-major then literal-minor.
        selected: precomputed clause selection; drawn here when omitted.
    """
    if bank.include.shape != state.shape or lit.shape[0] != state.n_literals:
        raise ValueError(
            f"Inconsistent shapes: bank {bank.include.shape}, state {state.shape}, literals {lit.shape}"
        )
    include = state.include_mask()
    fired = clause_outputs(include, lit, Mode.TRAIN)
    if selected is None:
        v = vote_sum(bank, lit, Mode.INFER)
        selected = select_clauses(v, cfg.t_margin, y, state.n_clauses, rng)
    draws = rng.random(state.shape)

    type_i_rows = selected & ((bank.polarity > 0) == (y == 1))
    type_ii_rows = selected & ~type_i_rows

    c_idx = np.broadcast_to(fired[:, np.newaxis], include.shape).astype(np.intp)
    l_idx = np.broadcast_to(lit[np.newaxis, :], include.shape).astype(np.intp)
    a_idx = include.astype(np.intp)
    assert not np.any(
        selected[:, np.newaxis] & (c_idx == 1) & (l_idx == 0) & include
    ), "Clause fired with an included false literal"

    up_i, down_i = type_i_move_table(float(cfg.s), cfg.boost_true_positive)
    up_ii, _ = type_ii_move_table()

    return FeedbackMatrices(
        f_ia=type_i_rows[:, np.newaxis] & (draws < up_i[c_idx, l_idx, a_idx]),
        f_ib=type_i_rows[:, np.newaxis] & (draws < down_i[c_idx, l_idx, a_idx]),
        f_ii=type_ii_rows[:, np.newaxis] & (draws < up_ii[c_idx, l_idx, a_idx]),
    )
