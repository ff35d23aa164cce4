"""Metrics, fold plans, cross-validation, grid search and group aggregation."""
from src.evaluation.aggregate import GroupStat, aggregate_group_stats
from src.evaluation.folds import FoldPlan, kfold_plan
from src.evaluation.metrics import (
    METRICS,
    ConfusionMatrix,
    Metric,
    confusion,
    f1_score,
    precision,
    recall,
    score_predictions,
    weighted_f1,
)
from src.evaluation.pipeline import CVResult, FoldManifest, PipelineSpec, PreparedFold, cross_validate, prepare_fold
from src.evaluation.search import GridPoint, GridSearchResult, grid_search, lattice

__all__ = [
    "METRICS",
    "CVResult",
    "ConfusionMatrix",
    "FoldManifest",
    "FoldPlan",
    "GridPoint",
    "GridSearchResult",
    "GroupStat",
    "Metric",
    "PipelineSpec",
    "PreparedFold",
    "aggregate_group_stats",
    "confusion",
    "cross_validate",
    "f1_score",
    "grid_search",
    "kfold_plan",
    "lattice",
    "prepare_fold",
    "precision",
    "recall",
    "score_predictions",
    "weighted_f1",
]
