"""
Reference perceptron with mistake-bound accounting.

Labels are +1/-1 internally; ``to_signed_labels`` adapts 0/1 targets. A mistake
is any sample with ``y * <w, x> <= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.models.constants import PERCEPTRON_MAX_EPOCHS
from src.models.reports import BoundReport

UNIT_NORM_TOLERANCE = 1e-6


class MarginAssumptionError(ValueError):
    pass


@dataclass
class PerceptronState:
    weights: np.ndarray
    k: int = 0
    fit_bias: bool = True

    def net_input(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.fit_bias:
            x = augment(x)
        return x @ self.weights

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.where(self.net_input(x) > 0, 1, -1)


def augment(x: np.ndarray) -> np.ndarray:
    """Absorb the bias as a constant last input."""
    return np.hstack([x, np.ones((x.shape[0], 1))])


def to_signed_labels(y: np.ndarray) -> np.ndarray:
    labels = np.asarray(y).astype(np.int64)
    if np.isin(labels, (-1, 1)).all():
        return labels
    if np.isin(labels, (0, 1)).all():
        return 2 * labels - 1
    raise ValueError("Labels must be 0/1 or -1/+1")


def perceptron_step(weights: np.ndarray, x: np.ndarray, y: int) -> np.ndarray:
    """The update W_{k+1} = W_k + y x for one mistake; returns the delta."""
    return y * np.asarray(x, dtype=weights.dtype)


def perceptron_fit(
    x: np.ndarray,
    y: np.ndarray,
    max_epochs: int = PERCEPTRON_MAX_EPOCHS,
    fit_bias: bool = True,
) -> tuple[PerceptronState, bool]:
    """Mistake-driven updates until a full pass without mistakes, or ``max_epochs`` passes."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if x.shape[0] == 0 or x.size == 0:
        raise ValueError("Cannot fit a perceptron on empty data")
    labels = to_signed_labels(y)
    if labels.shape[0] != x.shape[0]:
        raise ValueError(f"{x.shape[0]} samples but {labels.shape[0]} labels")
    inputs = augment(x) if fit_bias else x
    state = PerceptronState(weights=np.zeros(inputs.shape[1]), fit_bias=fit_bias)
    for _ in range(max_epochs):
        mistakes = 0
        for x_n, y_n in zip(inputs, labels):
            if y_n * (x_n @ state.weights) <= 0:
                state.weights = state.weights + perceptron_step(state.weights, x_n, int(y_n))
                state.k += 1
                mistakes += 1
        if mistakes == 0:
            return state, True
    return state, False


def convergence_bound(r: float | None, gamma: float, binary_input: bool = False, d: int | None = None) -> float:
    """R^2 / gamma^2, or D / gamma^2 for binary inputs (where ||x|| <= sqrt(D))."""
    if gamma <= 0:
        raise ValueError(f"Margin gamma must be positive, got {gamma}")
    if binary_input:
        if d is None or d < 1:
            raise ValueError("Binary-input bound needs the input dimension d >= 1")
        return d / gamma**2
    if r is None or r <= 0:
        raise ValueError("Radius R must be positive")
    return r**2 / gamma**2


def radius(x: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(np.asarray(x, dtype=float), axis=1)))


def margin(x: np.ndarray, y: np.ndarray, w_star: np.ndarray) -> float:
    return float(np.min(to_signed_labels(y) * (np.asarray(x, dtype=float) @ w_star)))


def is_binary_input(x: np.ndarray) -> bool:
    return bool(np.isin(np.asarray(x), (0, 1)).all())


def check_bound(
    x: np.ndarray,
    y: np.ndarray,
    w_star: np.ndarray,
    gamma: float,
    max_epochs: int = PERCEPTRON_MAX_EPOCHS,
) -> BoundReport:
    """
    Run a homogeneous perceptron (no bias column) and compare its update count with the bound.

    Raises:
        MarginAssumptionError: if ``w_star`` is not unit norm or does not separate with margin ``gamma``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    w_star = np.asarray(w_star, dtype=float)
    if gamma <= 0:
        raise ValueError(f"Margin gamma must be positive, got {gamma}")
    if abs(np.linalg.norm(w_star) - 1.0) > UNIT_NORM_TOLERANCE:
        raise MarginAssumptionError(f"Separator must have unit norm, got {np.linalg.norm(w_star):.6f}")
    achieved = margin(x, y, w_star)
    if achieved < gamma:
        raise MarginAssumptionError(f"Separator achieves margin {achieved:.6f} < gamma={gamma}")
    binary = is_binary_input(x)
    r = radius(x)
    bound = convergence_bound(r, gamma, binary_input=binary, d=x.shape[1])
    state, converged = perceptron_fit(x, y, max_epochs=max_epochs, fit_bias=False)
    return BoundReport(k=state.k, bound=bound, r=r, gamma=gamma, converged=converged, binary_input=binary)


def learned_separator_report(
    x: np.ndarray,
    y: np.ndarray,
    max_epochs: int = PERCEPTRON_MAX_EPOCHS,
    binary_input: bool = False,
) -> BoundReport:
    """
    Fit with an explicit bias column and, on convergence, use the learned unit
    separator as W* to evaluate the bound in the augmented space.

    The bound is R^2 / gamma^2 unless ``binary_input`` asks for D / gamma^2,
    which requires 0/1 features.
    """
    inputs = augment(np.atleast_2d(np.asarray(x, dtype=float)))
    if binary_input and not is_binary_input(inputs):
        raise ValueError("Binary-input bound requested but the features are not all 0/1")
    state, converged = perceptron_fit(inputs, y, max_epochs=max_epochs, fit_bias=False)
    r = radius(inputs)
    if not converged:
        return BoundReport(k=state.k, bound=None, r=r, gamma=None, converged=False, binary_input=binary_input)
    w_star = state.weights / np.linalg.norm(state.weights)
    gamma = margin(inputs, y, w_star)
    bound = convergence_bound(r, gamma, binary_input=binary_input, d=inputs.shape[1])
    return BoundReport(k=state.k, bound=bound, r=r, gamma=gamma, converged=True, binary_input=binary_input)
