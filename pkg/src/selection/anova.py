"""Univariate one-way ANOVA F scores and k-best selection."""
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

# SSW at or below this fraction of SST counts as zero within-class variance
_ZERO_WITHIN = 1e-12


@dataclass(frozen=True)
class FeatureScores:
    scores: tuple[float, ...]
    ranking: tuple[int, ...]  # feature indices, best first; ties by lower index
    method: str
    feature_names: tuple[str, ...] = ()

    @classmethod
    def from_scores(cls, scores: Sequence[float], method: str, feature_names: Sequence[str] = ()) -> "FeatureScores":
        s = [float(v) for v in scores]
        ranking = tuple(sorted(range(len(s)), key=lambda i: (-s[i], i)))
        return cls(tuple(s), ranking, method, tuple(feature_names))

    def named(self, names: Sequence[str]) -> "FeatureScores":
        return FeatureScores(self.scores, self.ranking, self.method, tuple(names))

    def to_rows(self) -> list[dict[str, Any]]:
        names = self.feature_names or tuple(str(i) for i in range(len(self.scores)))
        rank = {idx: r + 1 for r, idx in enumerate(self.ranking)}
        return [
            {"feature": names[i], "method": self.method, "score": self.scores[i], "rank": rank[i]}
            for i in range(len(self.scores))
        ]


def anova_f_scores(X, y) -> FeatureScores:
    """F = (between-class mean square) / (within-class mean square), per feature.

    Constant features score 0. Zero within-class variance with separated class means
    scores +inf, which ranks first.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    classes, counts = np.unique(y, return_counts=True)
    if classes.size != 2 or counts.min() < 2:
        raise ValueError(f"ANOVA F needs two classes with >= 2 rows each, got counts {counts.tolist()}")
    n = X.shape[0]
    grand = X.mean(axis=0)
    ssb = np.zeros(X.shape[1])
    ssw = np.zeros(X.shape[1])
    for c, m in zip(classes, counts):
        rows = X[y == c]
        mean_c = rows.mean(axis=0)
        ssb += m * (mean_c - grand) ** 2
        ssw += ((rows - mean_c) ** 2).sum(axis=0)
    sst = ((X - grand) ** 2).sum(axis=0)
    df_between = classes.size - 1
    df_within = n - classes.size
    scores = np.zeros(X.shape[1])
    constant = np.ptp(X, axis=0) == 0
    no_within = ~constant & (ssw <= _ZERO_WITHIN * sst)
    regular = ~constant & ~no_within
    scores[regular] = (ssb[regular] / df_between) / (ssw[regular] / df_within)
    scores[no_within] = np.inf
    return FeatureScores.from_scores(scores, "anova_f")


def default_k(scores: FeatureScores) -> int:
    """Number of features scoring strictly above the median, at least 1."""
    s = np.asarray(scores.scores)
    return max(1, int((s > np.median(s)).sum()))


def select_k_best(scores: FeatureScores, k: int) -> tuple[int, ...]:
    """Indices of the k best scores (ties by lower index), returned in ascending order."""
    if not 1 <= k <= len(scores.scores):
        raise ValueError(f"k must be in [1, {len(scores.scores)}], got {k}")
    return tuple(sorted(scores.ranking[:k]))
