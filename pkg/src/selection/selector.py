"""Feature-selection pipeline stage: none, kbest, extra_trees, or both in sequence."""
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from src.selection.anova import FeatureScores, anova_f_scores, default_k, select_k_best
from src.selection.extra_trees import extra_trees_importance, select_by_importance

SelectorKind = Literal["none", "kbest", "extra_trees", "both"]


@dataclass(frozen=True)
class SelectorFit:
    """Columns kept (indices into the matrix the selector was fitted on) and the scores behind them."""

    kind: str
    selected: tuple[int, ...]
    scores: list[FeatureScores] = field(default_factory=list)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X)[:, list(self.selected)]


def fit_selector(
    kind: SelectorKind,
    X: np.ndarray,
    y: np.ndarray,
    k: int | None = None,
    n_trees: int = 100,
    seed: int = 0,
    criterion: str = "gini",
    feature_names: list[str] | None = None,
) -> SelectorFit:
    """Fit on training rows only. kbest keeps k features (default: those above the median score);
    extra_trees keeps features with at least mean importance; both runs kbest then extra_trees
    on the survivors."""
    names = list(feature_names or [str(i) for i in range(X.shape[1])])
    all_columns = tuple(range(X.shape[1]))
    if kind == "none":
        return SelectorFit("none", all_columns)
    if kind not in ("kbest", "extra_trees", "both"):
        raise ValueError(f"unknown selector '{kind}'; valid: none, kbest, extra_trees, both")

    selected = all_columns
    found: list[FeatureScores] = []
    if kind in ("kbest", "both"):
        f = anova_f_scores(X, y).named(names)
        found.append(f)
        selected = select_k_best(f, min(k, X.shape[1]) if k is not None else default_k(f))
    if kind in ("extra_trees", "both"):
        sub = [names[i] for i in selected]
        imp = extra_trees_importance(X[:, list(selected)], y, n_trees=n_trees, seed=seed, criterion=criterion)
        found.append(imp.named(sub))
        selected = tuple(selected[i] for i in select_by_importance(imp))
    return SelectorFit(kind, selected, found)
