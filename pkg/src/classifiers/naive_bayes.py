"""Gaussian and Complement Naive Bayes."""
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.classifiers.base import frozen, make_family
from src.classifiers.registry import register_family
from src.data.encoding import apply_min_shift, fit_min_shift
from src.logging_utils import get_logger

logger = get_logger(__name__)

# Relative variance floor: epsilon = VAR_FLOOR_SCALE * largest feature variance
VAR_FLOOR_SCALE = 1e-9
CNB_ALPHA = 1.0


@dataclass(frozen=True)
class GaussianNBState:
    classes: tuple[int, ...]
    priors: np.ndarray  # (n_classes,)
    means: np.ndarray  # (n_classes, n_features)
    sigmas: np.ndarray  # (n_classes, n_features), already floored
    var_floor: float


def gaussian_density(x, mu, sigma):
    """Normal density N(x; mu, sigma)."""
    x = np.asarray(x, dtype=float)
    return np.exp(-((x - mu) ** 2) / (2.0 * sigma**2)) / np.sqrt(2.0 * math.pi * sigma**2)


def fit_gaussian_nb(X: np.ndarray, y: np.ndarray, var_floor: float | None = None) -> GaussianNBState:
    """Per class: prior, feature means and n-1 standard deviations floored at var_floor.

    var_floor defaults to 1e-9 times the largest feature variance (1e-9 if every feature is constant).
    """
    classes = np.unique(y)
    if var_floor is None:
        largest = float(np.var(X, axis=0, ddof=1).max(initial=0.0)) if X.shape[0] > 1 else 0.0
        var_floor = VAR_FLOOR_SCALE * largest if largest > 0 else VAR_FLOOR_SCALE
    priors, means, sigmas = [], [], []
    for c in classes:
        rows = X[y == c]
        priors.append(rows.shape[0] / X.shape[0])
        means.append(rows.mean(axis=0))
        sd = rows.std(axis=0, ddof=1) if rows.shape[0] > 1 else np.zeros(X.shape[1])
        sigmas.append(np.maximum(sd, var_floor))
    return GaussianNBState(
        classes=tuple(int(c) for c in classes),
        priors=frozen(np.array(priors)),
        means=frozen(np.array(means)),
        sigmas=frozen(np.array(sigmas)),
        var_floor=float(var_floor),
    )


def gnb_log_joint(state: GaussianNBState, X: np.ndarray) -> np.ndarray:
    """log prior + sum of log densities, shape (n_queries, n_classes)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    var = state.sigmas**2
    log_density = -0.5 * np.log(2.0 * math.pi * var)[None, :, :] - (
        (X[:, None, :] - state.means[None, :, :]) ** 2
    ) / (2.0 * var[None, :, :])
    return np.log(state.priors)[None, :] + log_density.sum(axis=2)


def gnb_posteriors(state: GaussianNBState, X: np.ndarray) -> np.ndarray:
    joint = gnb_log_joint(state, X)
    joint -= joint.max(axis=1, keepdims=True)
    p = np.exp(joint)
    return p / p.sum(axis=1, keepdims=True)


def gnb_predict(state: GaussianNBState, x) -> tuple[int, tuple[float, ...]]:
    """(argmax class, normalised posteriors in class order). Ties go to the lower label."""
    post = gnb_posteriors(state, np.asarray(x, dtype=float)[None, :])[0]
    return state.classes[int(np.argmax(post))], tuple(float(p) for p in post)


def _predict_gnb(state: GaussianNBState, X: np.ndarray) -> np.ndarray:
    return np.asarray(state.classes)[np.argmax(gnb_log_joint(state, X), axis=1)]


def _describe_gnb(state: GaussianNBState) -> dict[str, Any]:
    return {
        "classes": list(state.classes),
        "priors": state.priors.tolist(),
        "means": state.means.tolist(),
        "sigmas": state.sigmas.tolist(),
        "var_floor": state.var_floor,
    }


@dataclass(frozen=True)
class ComplementNBState:
    classes: tuple[int, ...]
    # log of smoothed feature-mass share over the rows NOT in each class, (n_classes, n_features)
    weights: np.ndarray
    alpha: float
    # per-column training minimum subtracted before scoring, or None if inputs were already >= 0
    shift: np.ndarray | None


def _check_non_negative(X: np.ndarray) -> None:
    if (X < 0).any():
        row, col = (int(v) for v in np.argwhere(X < 0)[0])
        raise ValueError(
            f"ComplementNB needs non-negative features; feature {col} is {X[row, col]:.6g} at row {row}"
        )


def fit_complement_nb(X: np.ndarray, y: np.ndarray, alpha: float = CNB_ALPHA, shift: bool = False) -> ComplementNBState:
    """Complement weights: for class c, w_cj = log((alpha + mass_j(not c)) / (alpha * d + mass(not c))).

    shift=True fits a per-column min-shift on X first and replays it (clipped at 0) at predict time.
    A single training class gets all-zero weights and is always predicted.
    """
    mins = fit_min_shift(X) if shift else None
    if mins is not None:
        X = apply_min_shift(X, mins)
    _check_non_negative(X)
    classes = np.unique(y)
    d = X.shape[1]
    if classes.size == 1:
        logger.warning("complement_nb_single_class", label=int(classes[0]))
        weights = np.zeros((1, d))
    else:
        weights = np.empty((classes.size, d))
        for i, c in enumerate(classes):
            mass = X[y != c].sum(axis=0)
            weights[i] = np.log((alpha + mass) / (alpha * d + mass.sum()))
    return ComplementNBState(
        classes=tuple(int(c) for c in classes),
        weights=frozen(weights),
        alpha=float(alpha),
        shift=None if mins is None else frozen(mins),
    )


def cnb_scores(state: ComplementNBState, X: np.ndarray) -> np.ndarray:
    """Complement score per (query, class): x . w_c. Small means x looks unlike the rest."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if state.shift is not None:
        X = apply_min_shift(X, state.shift)
    _check_non_negative(X)
    return X @ state.weights.T


def cnb_predict(state: ComplementNBState, x) -> int:
    """Class with the smallest complement score; ties go to the lower label."""
    return state.classes[int(np.argmin(cnb_scores(state, x)[0]))]


def _predict_cnb(state: ComplementNBState, X: np.ndarray) -> np.ndarray:
    return np.asarray(state.classes)[np.argmin(cnb_scores(state, X), axis=1)]


def _describe_cnb(state: ComplementNBState) -> dict[str, Any]:
    return {
        "classes": list(state.classes),
        "weights": state.weights.tolist(),
        "alpha": state.alpha,
        "shift": None if state.shift is None else state.shift.tolist(),
    }


register_family(
    make_family("gaussian_nb", fit=fit_gaussian_nb, predict=_predict_gnb, describe=_describe_gnb)
)
# Routed through the min-shift: scaled features can be negative
register_family(
    make_family(
        "complement_nb",
        fit=fit_complement_nb,
        predict=_predict_cnb,
        describe=_describe_cnb,
        defaults={"alpha": CNB_ALPHA, "shift": True},
    )
)
