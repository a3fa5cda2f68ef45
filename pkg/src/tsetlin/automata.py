"""
Tsetlin Automata state matrix.

One two-action automaton per (clause, literal) pair, organised as an
``n x 2o`` integer matrix with states in ``[1, 2N]``. States ``1..N`` select
Exclude, ``N+1..2N`` select Include.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class Action(IntEnum):
    EXCLUDE = 0
    INCLUDE = 1


class StateMatrix:
    __slots__ = ("_states", "_big_n")

    def __init__(self, states: np.ndarray, big_n: int):
        if big_n < 1:
            raise ValueError(f"big_n must be >= 1, got {big_n}")
        matrix = np.asarray(states, dtype=np.int32)
        if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0 or matrix.shape[1] % 2 != 0:
            raise ValueError(f"State matrix must be n x 2o with n, o >= 1, got shape {matrix.shape}")
        if matrix.min() < 1 or matrix.max() > 2 * big_n:
            raise ValueError(f"State entries must lie in [1, {2 * big_n}]")
        matrix.setflags(write=False)
        self._states = matrix
        self._big_n = big_n

    @property
    def states(self) -> np.ndarray:
        return self._states

    @property
    def big_n(self) -> int:
        return self._big_n

    @property
    def n_clauses(self) -> int:
        return int(self._states.shape[0])

    @property
    def n_literals(self) -> int:
        return int(self._states.shape[1])

    @property
    def n_features(self) -> int:
        return self.n_literals // 2

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_clauses, self.n_literals

    def include_mask(self) -> np.ndarray:
        return self._states > self._big_n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateMatrix):
            return NotImplemented
        return self._big_n == other._big_n and np.array_equal(self._states, other._states)

    def __repr__(self) -> str:
        return f"StateMatrix(n={self.n_clauses}, o={self.n_features}, N={self._big_n})"


@dataclass(frozen=True)
class FeedbackMatrices:
    f_ia: np.ndarray
    f_ib: np.ndarray
    f_ii: np.ndarray

    def __post_init__(self) -> None:
        shapes = {self.f_ia.shape, self.f_ib.shape, self.f_ii.shape}
        if len(shapes) != 1:
            raise ValueError(f"Feedback matrices disagree on shape: {shapes}")
        overlap = self.f_ia.astype(np.int8) + self.f_ib.astype(np.int8) + self.f_ii.astype(np.int8)
        if np.any(overlap > 1):
            raise ValueError("At most one feedback type may be issued per automaton and step")

    @property
    def shape(self) -> tuple[int, ...]:
        return self.f_ia.shape

    @classmethod
    def zeros(cls, n_clauses: int, n_literals: int) -> FeedbackMatrices:
        return cls(
            f_ia=np.zeros((n_clauses, n_literals), dtype=bool),
            f_ib=np.zeros((n_clauses, n_literals), dtype=bool),
            f_ii=np.zeros((n_clauses, n_literals), dtype=bool),
        )

    def is_empty(self) -> bool:
        return not (self.f_ia.any() or self.f_ib.any() or self.f_ii.any())


def init_states(n: int, o: int, big_n: int, rng: np.random.Generator) -> StateMatrix:
    """
    Random initialization on the two states adjacent to the action boundary.

    Every automaton starts in state N or N+1 with equal probability, so a single
    reward or penalty is enough to flip its action.

    Raises:
        ValueError: on an odd clause count or a zero size.
    """
    if n <= 0 or o <= 0 or big_n <= 0:
        raise ValueError(f"Sizes must be positive, got n={n}, o={o}, big_n={big_n}")
    if n % 2 != 0:
        raise ValueError(f"Clause count must be even (half of each polarity), got {n}")
    states = rng.choice(np.array([big_n, big_n + 1], dtype=np.int32), size=(n, 2 * o))
    return StateMatrix(states, big_n)


def action(state: int, big_n: int) -> Action:
    if not 1 <= state <= 2 * big_n:
        raise ValueError(f"State {state} outside [1, {2 * big_n}]")
    return Action.INCLUDE if state > big_n else Action.EXCLUDE


def apply_feedback(a: StateMatrix, f: FeedbackMatrices) -> StateMatrix:
    """A* = A + F^II + F^Ia - F^Ib, clipped to [1, 2N]. The input matrix is left untouched."""
    if f.shape != a.shape:
        raise ValueError(f"Feedback shape {f.shape} does not match state shape {a.shape}")
    updated = (
        a.states.astype(np.int32)
        + f.f_ii.astype(np.int32)
        + f.f_ia.astype(np.int32)
        - f.f_ib.astype(np.int32)
    )
    return StateMatrix(np.clip(updated, 1, 2 * a.big_n), a.big_n)
