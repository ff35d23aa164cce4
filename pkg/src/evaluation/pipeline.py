"""Leakage-safe cross-validation: every stage is fitted on the training split of each fold."""
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Literal

import numpy as np

from src.classifiers import fit_model, get_family
from src.data.encoding import EncodingMap, apply_encoding, apply_scaler, encode_categoricals, fit_scaler
from src.data.schema import Table
from src.errors import FoldFailure
from src.evaluation.folds import FoldPlan
from src.evaluation.metrics import METRICS, Metric, score_predictions
from src.logging_utils import get_logger, log_fold_failure
from src.resampling import ResampleMethod, ResamplePlan, resample
from src.seeds import derive_seed
from src.selection import FeatureScores, SelectorKind, fit_selector

logger = get_logger(__name__)

ResampleScope = Literal["fold", "global"]


@dataclass(frozen=True)
class PipelineSpec:
    """encoder -> scaler -> optional selector -> optional resampler -> classifier."""

    family: str
    params: dict[str, Any] = field(default_factory=dict)
    selector: SelectorKind = "kbest"
    selector_k: int | None = None
    extra_trees_n: int = 100
    extra_trees_criterion: str = "gini"
    resampler: ResampleMethod | None = None
    smote_k: int = 5
    # fold: oversample each training split; global: synthetic rows drawn from the whole table
    resample_scope: ResampleScope = "fold"
    metric: Metric = "f1"
    positive_label: int = 1

    def __post_init__(self) -> None:
        get_family(self.family)
        if self.selector not in ("none", "kbest", "extra_trees", "both"):
            raise ValueError(f"unknown selector '{self.selector}'; valid: none, kbest, extra_trees, both")
        if self.resampler not in (None, "random_over", "smote"):
            raise ValueError(f"unknown resampler '{self.resampler}'; valid: random_over, smote")
        if self.resample_scope not in ("fold", "global"):
            raise ValueError(f"unknown resample_scope '{self.resample_scope}'; valid: fold, global")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric '{self.metric}'; valid: {', '.join(METRICS)}")
        if self.selector_k is not None and self.selector_k < 1:
            raise ValueError(f"selector_k must be >= 1, got {self.selector_k}")

    def with_params(self, **params: Any) -> "PipelineSpec":
        return replace(self, params={**self.params, **params})

    def stages(self) -> list[str]:
        names = ["encoder", "scaler"]
        if self.selector != "none":
            names.append(f"selector:{self.selector}")
        if self.resampler is not None:
            names.append(f"resampler:{self.resampler}")
        names.append(f"classifier:{self.family}")
        return names

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "stages": self.stages()}


def _json_score(v: float) -> float | str:
    return float(v) if np.isfinite(v) else str(v)


@dataclass(frozen=True)
class FoldManifest:
    """What each stage learned from one training split."""

    fold: int
    n_train: int
    n_test: int
    n_train_resampled: int
    train_class_counts: dict[int, int]
    encoding: EncodingMap
    scaler: dict[str, Any]
    selected_features: tuple[str, ...]
    selector_scores: tuple[FeatureScores, ...]
    score: float
    # classifier parameters after family defaults are merged in
    model_params: dict[str, Any] = field(default_factory=dict)
    # per selected feature, the training minimum subtracted before a min-shifted fit
    min_shift: dict[str, float] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "fold": self.fold,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "n_train_resampled": self.n_train_resampled,
            "train_class_counts": {str(k): v for k, v in self.train_class_counts.items()},
            "encoding": self.encoding,
            "scaler": self.scaler,
            "selected_features": list(self.selected_features),
            "model_params": self.model_params,
            "min_shift": self.min_shift,
            "selector_scores": [
                {"method": s.method, "scores": {n: _json_score(v) for n, v in zip(s.feature_names, s.scores)}}
                for s in self.selector_scores
            ],
            "score": self.score,
        }


@dataclass(frozen=True)
class CVResult:
    fold_scores: tuple[float, ...]
    plan: FoldPlan
    pipeline: PipelineSpec
    manifests: tuple[FoldManifest, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.fold_scores))

    @property
    def sd(self) -> float:
        return float(np.std(self.fold_scores))

    def to_dict(self) -> dict[str, Any]:
        return {
            "fold_scores": list(self.fold_scores),
            "mean": self.mean,
            "sd": self.sd,
            "plan": self.plan.to_dict(),
            "pipeline": self.pipeline.to_dict(),
            "folds": [m.to_dict() for m in self.manifests],
        }


@dataclass(frozen=True)
class PreparedFold:
    """One fold after every stage ahead of the classifier; shared by all lattice points of a search."""

    fold: int
    X_fit: np.ndarray
    y_fit: np.ndarray
    X_test: np.ndarray
    y_test: np.ndarray
    n_train: int
    train_class_counts: dict[int, int]
    encoding: EncodingMap
    scaler: dict[str, Any]
    selected_features: tuple[str, ...]
    selector_scores: tuple[FeatureScores, ...]


def prepare_fold(pipeline: PipelineSpec, t: Table, plan: FoldPlan, fold: int, seed: int) -> PreparedFold:
    """Encode, scale, select and resample one training split. Classifier params play no part."""
    train = t.take(plan.train_indices(fold))
    test = t.take(plan.test_indices(fold))
    y_train, y_test = train.labels(), test.labels()
    classes, counts = np.unique(y_train, return_counts=True)
    if classes.size < 2:
        raise FoldFailure(fold, f"training split holds a single class {classes.tolist()}")

    train_enc, mapping = encode_categoricals(train)
    test_enc = apply_encoding(test, mapping)
    scaler = fit_scaler(train_enc)
    X_train = apply_scaler(train_enc, scaler).feature_matrix()
    X_test = apply_scaler(test_enc, scaler).feature_matrix()

    names = t.feature_names
    selector = fit_selector(
        pipeline.selector,
        X_train,
        y_train,
        k=pipeline.selector_k,
        n_trees=pipeline.extra_trees_n,
        seed=derive_seed(seed, "select", fold),
        criterion=pipeline.extra_trees_criterion,
        feature_names=names,
    )
    X_train, X_test = selector.transform(X_train), selector.transform(X_test)

    X_fit, y_fit = X_train, y_train
    if pipeline.resampler is not None:
        rplan = ResamplePlan(pipeline.resampler, pipeline.smote_k, derive_seed(seed, "resample", fold))
        if pipeline.resample_scope == "fold":
            X_fit, y_fit = resample(rplan, X_train, y_train)
        else:
            # Synthetic rows come from every row, test rows included; only they join the training split
            X_all = np.vstack([X_train, X_test])
            X_res, y_res = resample(rplan, X_all, np.concatenate([y_train, y_test]))
            n_all = X_all.shape[0]
            X_fit = np.vstack([X_train, X_res[n_all:]])
            y_fit = np.concatenate([y_train, y_res[n_all:]])

    return PreparedFold(
        fold=fold,
        X_fit=X_fit,
        y_fit=y_fit,
        X_test=X_test,
        y_test=y_test,
        n_train=int(y_train.size),
        train_class_counts={int(c): int(n) for c, n in zip(classes, counts)},
        encoding=mapping,
        scaler=scaler.to_dict(),
        selected_features=tuple(names[i] for i in selector.selected),
        selector_scores=tuple(selector.scores),
    )


def _score_fold(pipeline: PipelineSpec, prepared: PreparedFold) -> FoldManifest:
    model = fit_model(pipeline.family, prepared.X_fit, prepared.y_fit, **pipeline.params)
    score = score_predictions(pipeline.metric, prepared.y_test, model.predict(prepared.X_test), pipeline.positive_label)
    shift = getattr(model.state, "shift", None)
    return FoldManifest(
        fold=prepared.fold,
        n_train=prepared.n_train,
        n_test=int(prepared.y_test.size),
        n_train_resampled=int(prepared.y_fit.size),
        train_class_counts=prepared.train_class_counts,
        encoding=prepared.encoding,
        scaler=prepared.scaler,
        selected_features=prepared.selected_features,
        selector_scores=prepared.selector_scores,
        score=float(score),
        model_params=dict(model.params),
        min_shift=None if shift is None else {n: float(v) for n, v in zip(prepared.selected_features, shift)},
    )


def cross_validate(
    pipeline: PipelineSpec,
    t: Table,
    plan: FoldPlan,
    seed: int = 0,
    prepared: dict[int, PreparedFold] | None = None,
) -> CVResult:
    """Fit and score the pipeline on every fold of plan.

    Folds are scored in order and each draws its randomness from (seed, fold), so the
    result depends on nothing but the arguments. Any fold failure aborts the whole
    evaluation with FoldFailure; partial means are never reported. prepared caches
    prepare_fold output by fold; it is only valid for pipelines that differ in params alone
    and for the same (t, plan, seed).
    """
    if plan.n != t.row_count:
        raise ValueError(f"fold plan covers {plan.n} rows but the table has {t.row_count}")
    manifests: list[FoldManifest] = []
    for fold in range(plan.k):
        try:
            ready = prepared.get(fold) if prepared is not None else None
            if ready is None:
                ready = prepare_fold(pipeline, t, plan, fold, seed)
                if prepared is not None:
                    prepared[fold] = ready
            manifests.append(_score_fold(pipeline, ready))
        except FoldFailure as e:
            log_fold_failure(logger, e.fold, e.reason)
            raise
        except (ValueError, ArithmeticError) as e:
            log_fold_failure(logger, fold, str(e))
            raise FoldFailure(fold, str(e)) from e
    return CVResult(
        fold_scores=tuple(m.score for m in manifests),
        plan=plan,
        pipeline=pipeline,
        manifests=tuple(manifests),
    )
