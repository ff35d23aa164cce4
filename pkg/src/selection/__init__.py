"""Feature selection: univariate ANOVA F k-best and extremely-randomized-trees importance."""
from src.selection.anova import FeatureScores, anova_f_scores, default_k, select_k_best
from src.selection.extra_trees import extra_trees_importance, select_by_importance
from src.selection.selector import SelectorFit, SelectorKind, fit_selector

__all__ = [
    "FeatureScores",
    "SelectorFit",
    "SelectorKind",
    "anova_f_scores",
    "default_k",
    "extra_trees_importance",
    "fit_selector",
    "select_by_importance",
    "select_k_best",
]
