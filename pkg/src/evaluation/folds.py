"""Seeded k-fold plans; stratified plans spread each class evenly over the folds."""
from dataclasses import dataclass
from typing import Any

import numpy as np


@dataclass(frozen=True)
class FoldPlan:
    k: int
    n: int
    test_folds: tuple[tuple[int, ...], ...]
    seed: int
    stratified: bool

    def test_indices(self, fold: int) -> np.ndarray:
        return np.asarray(self.test_folds[fold], dtype=int)

    def train_indices(self, fold: int) -> np.ndarray:
        mask = np.ones(self.n, dtype=bool)
        mask[self.test_indices(fold)] = False
        return np.flatnonzero(mask)

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "n": self.n,
            "seed": self.seed,
            "stratified": self.stratified,
            "fold_sizes": [len(f) for f in self.test_folds],
        }


def kfold_plan(n: int, k: int, y=None, stratified: bool = True, seed: int = 0) -> FoldPlan:
    """Partition 0..n-1 into k test folds whose sizes differ by at most 1.

    Rows are shuffled (within each class when stratified), laid end to end class by class,
    and dealt to folds round-robin. Any contiguous run dealt round-robin lands within one
    of even, so both the fold sizes and the per-fold class counts differ by at most 1.
    """
    if k < 2:
        raise ValueError(f"need at least 2 folds, got {k}")
    if k > n:
        raise ValueError(f"cannot make {k} folds from {n} rows")
    rng = np.random.default_rng(seed)
    if stratified:
        if y is None:
            raise ValueError("stratified folds need labels")
        y = np.asarray(y)
        if y.shape[0] != n:
            raise ValueError(f"got {y.shape[0]} labels for {n} rows")
        order = np.concatenate([rng.permutation(np.flatnonzero(y == c)) for c in np.unique(y)])
    else:
        order = rng.permutation(n)
    folds = [sorted(int(i) for i in order[f::k]) for f in range(k)]
    return FoldPlan(k=k, n=n, test_folds=tuple(tuple(f) for f in folds), seed=seed, stratified=stratified)
