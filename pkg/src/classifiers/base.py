"""Family protocol: name, fit, predict and describe callables for one classifier family."""
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

# fit(X, y, **params) -> fitted state; predict(state, X) -> labels; describe(state) -> JSON-able dict
FitFn = Callable[..., Any]
PredictFn = Callable[[Any, np.ndarray], np.ndarray]
DescribeFn = Callable[[Any], dict[str, Any]]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    fit: FitFn
    predict: PredictFn
    describe: DescribeFn
    defaults: dict[str, Any]


def make_family(
    name: str,
    fit: FitFn,
    predict: PredictFn,
    describe: DescribeFn,
    defaults: dict[str, Any] | None = None,
) -> FamilySpec:
    """Bundle a family's callables. defaults are the hyperparameters used when none are given."""
    return FamilySpec(name=name, fit=fit, predict=predict, describe=describe, defaults=dict(defaults or {}))


def check_fit_inputs(X, y) -> tuple[np.ndarray, np.ndarray]:
    """2-D finite float X with one label per row."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D, got shape {X.shape}")
    if y.ndim != 1 or y.shape[0] != X.shape[0]:
        raise ValueError(f"y must be 1-D with {X.shape[0]} labels, got shape {y.shape}")
    if X.shape[0] == 0:
        raise ValueError("cannot fit on zero rows")
    if not np.isfinite(X).all():
        raise ValueError("X contains non-finite values")
    return X, y


def check_width(X, n_features: int) -> np.ndarray:
    """Coerce queries to 2-D and check they have the fitted width."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != n_features:
        raise ValueError(f"expected {n_features} features, got {X.shape[1]}")
    return X


def require_two_classes(y: np.ndarray, family: str) -> np.ndarray:
    classes = np.unique(y)
    if classes.size != 2:
        raise ValueError(f"{family} needs exactly two classes in y, got {classes.tolist()}")
    return classes


def frozen(a: np.ndarray) -> np.ndarray:
    """Read-only copy, so fitted state cannot change after fit."""
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a
