"""Extremely randomized trees: impurity-decrease feature importance."""
import math

import numpy as np

from src.classifiers.tree import MIN_GAIN, Criterion, impurity_rows
from src.selection.anova import FeatureScores


def _random_split(X, codes, n_classes, criterion, rng):
    """One random threshold per candidate feature; the best by impurity decrease wins."""
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    splittable = np.flatnonzero(hi > lo)
    if splittable.size == 0:
        return None
    n_candidates = min(splittable.size, max(1, int(math.sqrt(X.shape[1]))))
    candidates = np.sort(rng.choice(splittable, size=n_candidates, replace=False))
    n = codes.size
    parent_counts = np.bincount(codes, minlength=n_classes)
    parent = impurity_rows(parent_counts[None, :], criterion)[0]
    best = None
    for j in candidates:
        threshold = rng.uniform(lo[j], hi[j])
        left = X[:, j] <= threshold
        n_left = int(left.sum())
        if n_left == 0 or n_left == n:
            continue
        counts = np.vstack(
            [np.bincount(codes[left], minlength=n_classes), np.bincount(codes[~left], minlength=n_classes)]
        )
        imp = impurity_rows(counts, criterion)
        gain = parent - (n_left * imp[0] + (n - n_left) * imp[1]) / n
        if best is None or gain > best[2]:
            best = (int(j), left, float(gain))
    return best


def _grow_importance(X, codes, n_classes, criterion, rng, n_total, importance) -> None:
    """Grow one fully grown randomized tree, adding weighted impurity decreases to importance."""
    stack = [(X, codes)]
    while stack:
        Xn, cn = stack.pop()
        if cn.size < 2 or np.unique(cn).size == 1:
            continue
        split = _random_split(Xn, cn, n_classes, criterion, rng)
        if split is None:
            continue
        j, left, gain = split
        if gain > MIN_GAIN:
            importance[j] += cn.size / n_total * gain
        stack.append((Xn[~left], cn[~left]))
        stack.append((Xn[left], cn[left]))


def extra_trees_importance(
    X, y, n_trees: int = 100, seed: int = 0, criterion: Criterion = "gini"
) -> FeatureScores:
    """Summed impurity decrease per feature over n_trees randomized trees, normalised to sum 1.

    Each tree draws from its own substream of the seed, so the result does not depend on
    the order trees are built in.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.shape[0] < 2:
        raise ValueError("extra_trees_importance needs at least 2 rows")
    classes, codes = np.unique(y, return_inverse=True)
    if classes.size != 2:
        raise ValueError(f"extra_trees_importance needs two classes, got {classes.tolist()}")
    if n_trees < 1:
        raise ValueError(f"n_trees must be >= 1, got {n_trees}")
    importance = np.zeros(X.shape[1])
    for child in np.random.SeedSequence(seed).spawn(n_trees):
        _grow_importance(X, codes, classes.size, criterion, np.random.default_rng(child), X.shape[0], importance)
    total = importance.sum()
    scores = importance / total if total > 0 else np.full(X.shape[1], 1.0 / X.shape[1])
    return FeatureScores.from_scores(scores, "extra_trees")


def select_by_importance(scores: FeatureScores) -> tuple[int, ...]:
    """Features whose importance is at least the mean importance."""
    s = np.asarray(scores.scores)
    keep = np.flatnonzero(s >= s.mean() - 1e-15)
    return tuple(int(i) for i in keep)
