"""Minority oversampling on training data: random duplication and SMOTE interpolation."""
from dataclasses import dataclass
from typing import Literal

import numpy as np

ResampleMethod = Literal["random_over", "smote"]
_GAP_RESOLUTION = 2**53


@dataclass(frozen=True)
class ResamplePlan:
    method: ResampleMethod
    k_neighbors: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.method not in ("random_over", "smote"):
            raise ValueError(f"unknown resample method '{self.method}'; valid: random_over, smote")
        if self.k_neighbors < 1:
            raise ValueError(f"k_neighbors must be >= 1, got {self.k_neighbors}")


def _split_classes(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row indices of (minority, majority). Equal counts: the higher label counts as minority."""
    classes, counts = np.unique(y, return_counts=True)
    if classes.size != 2:
        raise ValueError(f"oversampling needs exactly two classes, got {classes.size}: {classes.tolist()}")
    minority = classes[1] if counts[1] <= counts[0] else classes[0]
    majority = classes[0] if minority == classes[1] else classes[1]
    return np.flatnonzero(y == minority), np.flatnonzero(y == majority)


def _as_arrays(X, y) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ValueError(f"X must be 2-D with one row per label; got X{X.shape}, y{y.shape}")
    return X, y


def random_oversample(X, y, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Append randomly chosen copies of minority rows until both classes have equal counts.

    Original rows keep their order; duplicates are appended after them.
    """
    X, y = _as_arrays(X, y)
    minority, majority = _split_classes(y)
    deficit = majority.size - minority.size
    if deficit == 0:
        return X.copy(), y.copy()
    rng = np.random.default_rng(seed)
    chosen = minority[rng.integers(0, minority.size, size=deficit)]
    return np.vstack([X, X[chosen]]), np.concatenate([y, y[chosen]])


def minority_neighbours(X_min: np.ndarray, k: int) -> np.ndarray:
    """k nearest other minority rows per minority row (Euclidean); ties go to the lower row index."""
    diff = X_min[:, None, :] - X_min[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    order = np.argsort(dist, axis=1, kind="stable")
    return order[:, :k]


def smote(X, y, k: int = 5, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Append synthetic minority rows s = x + gap * (x_nn - x) until the classes balance.

    x is a uniformly chosen minority row, x_nn one of its k nearest minority neighbours
    and gap is uniform on [0, 1]. With m minority rows, k is capped at m - 1; a single
    minority row falls back to duplication.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    X, y = _as_arrays(X, y)
    minority, majority = _split_classes(y)
    deficit = majority.size - minority.size
    if deficit == 0:
        return X.copy(), y.copy()
    if minority.size == 1:
        return random_oversample(X, y, seed)

    k_eff = min(k, minority.size - 1)
    X_min = X[minority]
    neighbours = minority_neighbours(X_min, k_eff)
    rng = np.random.default_rng(seed)
    base = rng.integers(0, minority.size, size=deficit)
    pick = neighbours[base, rng.integers(0, k_eff, size=deficit)]
    # integer draw over [0, 2**53] so both segment endpoints are reachable
    gap = rng.integers(0, _GAP_RESOLUTION + 1, size=deficit) / _GAP_RESOLUTION
    synthetic = X_min[base] + gap[:, None] * (X_min[pick] - X_min[base])
    label = y[minority[0]]
    return np.vstack([X, synthetic]), np.concatenate([y, np.full(deficit, label, dtype=y.dtype)])


def resample(plan: ResamplePlan, X, y) -> tuple[np.ndarray, np.ndarray]:
    """Apply a ResamplePlan."""
    if plan.method == "random_over":
        return random_oversample(X, y, plan.seed)
    return smote(X, y, k=plan.k_neighbors, seed=plan.seed)
