"""Logistic regression fitted by full-batch gradient descent on the L2-regularised log-loss."""
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.classifiers.base import frozen, make_family, require_two_classes
from src.classifiers.registry import register_family

DECISION_THRESHOLD = 0.5


@dataclass(frozen=True)
class LogisticState:
    beta0: float
    beta: np.ndarray
    classes: tuple[int, int]
    iterations: int
    final_loss: float
    converged: bool


def expit(z):
    """1 / (1 + exp(-z)) without overflow.

    Strictly inside (0, 1) for |z| <= 36; from about |z| = 38 on, float64 rounds the result to
    exactly 0.0 or 1.0. expit(0) is exactly 0.5, so z = 0 lands on the class-1 side of the threshold.
    """
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(z, dtype=float)))


def logistic_loss_and_gradient(
    beta0: float, beta: np.ndarray, X: np.ndarray, y01: np.ndarray, l2: float
) -> tuple[float, float, np.ndarray]:
    """Mean negative log-likelihood + (l2 / 2) * |beta|^2, and its gradient.

    The intercept is not penalised. Returns (loss, d/d beta0, d/d beta).
    """
    n = X.shape[0]
    z = beta0 + X @ beta
    loss = float(np.mean(np.logaddexp(0.0, z) - y01 * z) + 0.5 * l2 * (beta @ beta))
    residual = expit(z) - y01
    g0 = float(residual.mean())
    g = X.T @ residual / n + l2 * beta
    return loss, g0, g


def sigmoid_predict(state: LogisticState, x) -> float:
    """P(class 1 | x) = 1 / (1 + exp(-(beta0 + beta . x))); saturates to 0.0 or 1.0 beyond |z| of about 38."""
    x = np.asarray(x, dtype=float)
    if x.shape != state.beta.shape:
        raise ValueError(f"expected {state.beta.shape[0]} features, got {x.shape}")
    return float(expit(state.beta0 + x @ state.beta))


def fit_logistic(
    X: np.ndarray,
    y: np.ndarray,
    learning_rate: float = 0.1,
    max_iters: int = 5000,
    l2: float = 1e-4,
    tol: float = 1e-6,
) -> LogisticState:
    """Gradient descent until max_iters or the gradient's infinity-norm drops below tol."""
    classes = require_two_classes(y, "logistic regression")
    if learning_rate <= 0:
        raise ValueError(f"learning_rate must be positive, got {learning_rate}")
    if max_iters < 0:
        raise ValueError(f"max_iters must be >= 0, got {max_iters}")
    y01 = (y == classes[1]).astype(float)
    beta0 = 0.0
    beta = np.zeros(X.shape[1])
    converged = False
    it = 0
    for it in range(max_iters + 1):
        loss, g0, g = logistic_loss_and_gradient(beta0, beta, X, y01, l2)
        if not (np.isfinite(loss) and np.isfinite(g0) and np.isfinite(g).all()):
            raise ValueError(f"loss or gradient became non-finite at step {it}; use a smaller learning_rate")
        if max(abs(g0), float(np.abs(g).max(initial=0.0))) < tol:
            converged = True
            break
        if it == max_iters:
            break
        beta0 -= learning_rate * g0
        beta = beta - learning_rate * g
    # the loop exits before stepping, so loss belongs to the returned coefficients
    final_loss = loss
    return LogisticState(
        beta0=float(beta0),
        beta=frozen(beta),
        classes=(int(classes[0]), int(classes[1])),
        iterations=it,
        final_loss=final_loss,
        converged=converged,
    )


def predict_logistic(state: LogisticState, X: np.ndarray) -> np.ndarray:
    p = expit(state.beta0 + X @ state.beta)
    return np.where(p >= DECISION_THRESHOLD, state.classes[1], state.classes[0])


def describe_logistic(state: LogisticState) -> dict[str, Any]:
    return {
        "beta0": state.beta0,
        "beta": state.beta.tolist(),
        "iterations": state.iterations,
        "final_loss": state.final_loss,
        "converged": state.converged,
    }


register_family(
    make_family(
        "logistic",
        fit=fit_logistic,
        predict=predict_logistic,
        describe=describe_logistic,
        defaults={"learning_rate": 0.1, "max_iters": 5000, "l2": 1e-4, "tol": 1e-6},
    )
)
