"""Binary decision tree grown greedily on entropy or Gini impurity decrease."""
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np

from src.classifiers.base import make_family
from src.classifiers.registry import register_family

Criterion = Literal["entropy", "gini"]
# splits must decrease impurity by more than this; smaller gains are rounding noise
MIN_GAIN = 1e-12


def entropy(p) -> float:
    """-sum p_i log2 p_i in bits, with 0 log 0 = 0."""
    p = _check_proportions(p)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def gini(p) -> float:
    """1 - sum p_i^2."""
    p = _check_proportions(p)
    return float(1.0 - (p**2).sum())


def _check_proportions(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if (p < 0).any():
        raise ValueError(f"proportions must be non-negative, got {p.tolist()}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"proportions must sum to 1, got {p.sum():.12g}")
    return p


def impurity_rows(counts: np.ndarray, criterion: Criterion) -> np.ndarray:
    """Impurity along the last axis of a (..., n_classes) count array. Empty rows get 0."""
    counts = np.asarray(counts, dtype=float)
    totals = counts.sum(axis=-1, keepdims=True)
    p = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    if criterion == "gini":
        return 1.0 - (p**2).sum(axis=-1)
    if criterion == "entropy":
        logs = np.log2(p, out=np.zeros_like(p), where=p > 0)
        return -(p * logs).sum(axis=-1)
    raise ValueError(f"unknown criterion '{criterion}'; valid: entropy, gini")


@dataclass(frozen=True)
class TreeLeaf:
    label: int
    proportions: tuple[float, ...]  # in training class order
    n_samples: int


@dataclass(frozen=True)
class TreeSplit:
    feature: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"
    n_samples: int
    gain: float


TreeNode = TreeLeaf | TreeSplit


@dataclass(frozen=True)
class SplitChoice:
    feature: int
    threshold: float
    gain: float


def best_split(
    X: np.ndarray,
    codes: np.ndarray,
    n_classes: int,
    criterion: Criterion,
    min_samples_leaf: int = 1,
) -> SplitChoice | None:
    """Exhaustive search over every feature and every midpoint between consecutive distinct values.

    codes are class indices 0..n_classes-1. Equal gains keep the lower feature, then the
    lower threshold. Returns None when no split decreases impurity by more than MIN_GAIN.
    All features are sorted and scored in one pass: cumulative class counts form an
    (n-1, d, n_classes) array whose row i is the left child of the cut after sorted row i.
    """
    n, d = X.shape
    if n < 2 or d == 0:
        return None
    onehot = np.eye(n_classes)[codes]
    parent_counts = onehot.sum(axis=0)
    parent = impurity_rows(parent_counts[None, :], criterion)[0]
    n_left = np.arange(1, n, dtype=float)[:, None]
    n_right = n - n_left
    size_ok = (n_left >= min_samples_leaf) & (n_right >= min_samples_leaf)

    order = np.argsort(X, axis=0, kind="stable")
    xs = np.take_along_axis(X, order, axis=0)
    valid = size_ok & (xs[1:] > xs[:-1])
    if not valid.any():
        return None
    left = np.cumsum(onehot[order], axis=0)[:-1]
    right = parent_counts - left
    child = (n_left * impurity_rows(left, criterion) + n_right * impurity_rows(right, criterion)) / n
    gain = np.where(valid, parent - child, -np.inf)

    rows = np.argmax(gain, axis=0)
    per_feature = gain[rows, np.arange(d)]
    j = int(np.argmax(per_feature))
    if not per_feature[j] > MIN_GAIN:
        return None
    i = int(rows[j])
    return SplitChoice(feature=j, threshold=float((xs[i, j] + xs[i + 1, j]) / 2.0), gain=float(per_feature[j]))


def _leaf(codes: np.ndarray, classes: np.ndarray) -> TreeLeaf:
    counts = np.bincount(codes, minlength=classes.size)
    return TreeLeaf(
        label=int(classes[int(np.argmax(counts))]),
        proportions=tuple(float(c) for c in counts / counts.sum()),
        n_samples=int(counts.sum()),
    )


def fit_tree(
    X: np.ndarray,
    y: np.ndarray,
    criterion: Criterion = "entropy",
    max_depth: int | None = None,
    min_samples_split: int = 2,
    min_samples_leaf: int = 1,
) -> TreeNode:
    """Greedy recursive binary splitting. Stops on purity, max_depth, or the sample minima.

    A leaf predicts its majority class (lower label on ties). max_depth=None grows fully.
    """
    if criterion not in ("entropy", "gini"):
        raise ValueError(f"unknown criterion '{criterion}'; valid: entropy, gini")
    if min_samples_split < 2 or min_samples_leaf < 1:
        raise ValueError("min_samples_split must be >= 2 and min_samples_leaf >= 1")
    if max_depth is not None and max_depth < 0:
        raise ValueError(f"max_depth must be >= 0 or None, got {max_depth}")
    classes, codes = np.unique(y, return_inverse=True)
    return _grow(X, codes, classes, 0, criterion, max_depth, min_samples_split, min_samples_leaf)


def _grow(X, codes, classes, depth, criterion, max_depth, min_samples_split, min_samples_leaf) -> TreeNode:
    n = codes.size
    if (
        np.unique(codes).size == 1
        or (max_depth is not None and depth >= max_depth)
        or n < min_samples_split
    ):
        return _leaf(codes, classes)
    split = best_split(X, codes, classes.size, criterion, min_samples_leaf)
    if split is None:
        return _leaf(codes, classes)
    go_left = X[:, split.feature] <= split.threshold
    args = (classes, depth + 1, criterion, max_depth, min_samples_split, min_samples_leaf)
    return TreeSplit(
        feature=split.feature,
        threshold=split.threshold,
        left=_grow(X[go_left], codes[go_left], *args),
        right=_grow(X[~go_left], codes[~go_left], *args),
        n_samples=n,
        gain=split.gain,
    )


def tree_predict(root: TreeNode, x) -> int:
    """Go left iff x[feature] <= threshold until a leaf."""
    node = root
    while isinstance(node, TreeSplit):
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.label


def tree_depth(root: TreeNode) -> int:
    if isinstance(root, TreeLeaf):
        return 0
    return 1 + max(tree_depth(root.left), tree_depth(root.right))


def iter_splits(root: TreeNode):
    """Every decision node, depth first."""
    if isinstance(root, TreeSplit):
        yield root
        yield from iter_splits(root.left)
        yield from iter_splits(root.right)


def tree_to_dict(root: TreeNode) -> dict[str, Any]:
    if isinstance(root, TreeLeaf):
        return {"label": root.label, "proportions": list(root.proportions), "n_samples": root.n_samples}
    return {
        "feature": root.feature,
        "threshold": root.threshold,
        "gain": root.gain,
        "n_samples": root.n_samples,
        "left": tree_to_dict(root.left),
        "right": tree_to_dict(root.right),
    }


def _predict_tree(root: TreeNode, X: np.ndarray) -> np.ndarray:
    return np.array([tree_predict(root, x) for x in X])


def _describe_tree(root: TreeNode) -> dict[str, Any]:
    return {"depth": tree_depth(root), "root": tree_to_dict(root)}


register_family(
    make_family(
        "decision_tree",
        fit=fit_tree,
        predict=_predict_tree,
        describe=_describe_tree,
        defaults={"criterion": "entropy", "max_depth": None, "min_samples_split": 2, "min_samples_leaf": 1},
    )
)
