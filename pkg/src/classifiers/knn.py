"""Brute-force k-nearest neighbours with Euclidean distance and majority vote."""
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.classifiers.base import frozen, make_family
from src.classifiers.registry import register_family


@dataclass(frozen=True)
class KNNState:
    X: np.ndarray
    y: np.ndarray
    k: int
    classes: tuple[int, ...]


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.sqrt(((a - b) ** 2).sum()))


def _check_k(k: int, n: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"k = {k} exceeds the {n} training rows")


def fit_knn(X: np.ndarray, y: np.ndarray, k: int = 5, vote: str = "uniform") -> KNNState:
    if vote != "uniform":
        raise ValueError(f"only uniform voting is supported, got '{vote}'")
    _check_k(k, X.shape[0])
    return KNNState(X=frozen(X), y=frozen(y), k=int(k), classes=tuple(int(c) for c in np.unique(y)))


def knn_predict(state: KNNState, x) -> tuple[int, dict[int, float]]:
    """(predicted class, P(y = j) = votes_j / k for every training class).

    Equidistant neighbours are taken in row order. A vote tie goes to the class whose
    neighbours have the smaller summed distance, then to the lower label.
    """
    _check_k(state.k, state.X.shape[0])
    x = np.asarray(x, dtype=float)
    dist = np.sqrt(((state.X - x) ** 2).sum(axis=1))
    nearest = np.argsort(dist, kind="stable")[: state.k]
    votes = {c: 0 for c in state.classes}
    summed = {c: 0.0 for c in state.classes}
    for i in nearest:
        label = int(state.y[i])
        votes[label] += 1
        summed[label] += float(dist[i])
    winner = min(state.classes, key=lambda c: (-votes[c], summed[c], c))
    return winner, {c: votes[c] / state.k for c in state.classes}


def _predict_knn(state: KNNState, X: np.ndarray) -> np.ndarray:
    return np.array([knn_predict(state, x)[0] for x in X])


def _describe_knn(state: KNNState) -> dict[str, Any]:
    return {"k": state.k, "n_train": int(state.X.shape[0]), "classes": list(state.classes)}


register_family(
    make_family("knn", fit=fit_knn, predict=_predict_knn, describe=_describe_knn, defaults={"k": 5, "vote": "uniform"})
)
