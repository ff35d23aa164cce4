"""Confusion counts, precision, recall and f1 on the positive class (success = 1)."""
from dataclasses import dataclass
from typing import Literal

import numpy as np

Metric = Literal["f1", "f1_weighted"]
METRICS: tuple[str, ...] = ("f1", "f1_weighted")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def _pair(y_true, y_pred) -> tuple[np.ndarray, np.ndarray]:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise ValueError(f"label vectors differ in length: {y_true.shape} vs {y_pred.shape}")
    return y_true, y_pred


def confusion(y_true, y_pred, positive_label: int = 1) -> ConfusionMatrix:
    y_true, y_pred = _pair(y_true, y_pred)
    t = y_true == positive_label
    p = y_pred == positive_label
    return ConfusionMatrix(
        tp=int((t & p).sum()),
        fp=int((~t & p).sum()),
        fn=int((t & ~p).sum()),
        tn=int((~t & ~p).sum()),
    )


# Zero denominators give 0, for precision, recall and f1 alike
def precision(cm: ConfusionMatrix) -> float:
    d = cm.tp + cm.fp
    return cm.tp / d if d else 0.0


def recall(cm: ConfusionMatrix) -> float:
    d = cm.tp + cm.fn
    return cm.tp / d if d else 0.0


def f1_score(cm: ConfusionMatrix) -> float:
    p, r = precision(cm), recall(cm)
    return 2.0 * p * r / (p + r) if (p + r) else 0.0


def weighted_f1(y_true, y_pred) -> float:
    """Per-class f1 averaged with weights proportional to each class's support in y_true."""
    y_true, y_pred = _pair(y_true, y_pred)
    if y_true.size == 0:
        return 0.0
    labels, support = np.unique(y_true, return_counts=True)
    per_class = [f1_score(confusion(y_true, y_pred, positive_label=c)) for c in labels]
    return float(np.dot(per_class, support) / support.sum())


def score_predictions(metric: Metric, y_true, y_pred, positive_label: int = 1) -> float:
    if metric == "f1":
        return f1_score(confusion(y_true, y_pred, positive_label))
    if metric == "f1_weighted":
        return weighted_f1(y_true, y_pred)
    raise ValueError(f"unknown metric '{metric}'; valid: {', '.join(METRICS)}")
