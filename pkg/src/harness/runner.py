"""Run the variants x groups matrix: one cross-validated pipeline per cell."""
import sys
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.config import LOG_LEVEL, validate_workers
from src.data import Table, get_group, select_group
from src.errors import HarnessError
from src.evaluation import CVResult, GroupStat, aggregate_group_stats, cross_validate, grid_search
from src.harness.experiment import (
    ExperimentConfig,
    build_pipeline,
    cell_seed,
    fold_plan,
    grid_for,
    load_data,
    search_plan,
)
from src.harness.variants import resolve_variant
from src.logging_utils import (
    configure_logging,
    get_logger,
    log_cell_end,
    log_cell_start,
    log_run_end,
    log_run_start,
    set_run_id,
    set_run_log_dir,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class CellResult:
    variant: str
    group: str
    seed: int
    success: bool
    mean_f1: float | None = None
    fold_scores: tuple[float, ...] = ()
    # hyperparameters the classifier was fitted with; for searched cells, the winning point
    params: dict[str, Any] = field(default_factory=dict)
    best_params: dict[str, Any] | None = None
    search: dict[str, Any] | None = None
    # method -> feature -> score averaged over folds; empty when no selector ran
    feature_scores: dict[str, dict[str, float]] = field(default_factory=dict)
    # per fold, the min-shift applied ahead of the classifier; empty when the family does not shift
    min_shift: tuple[dict[str, float], ...] = ()
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "group": self.group,
            "seed": self.seed,
            "success": self.success,
            "mean_f1": self.mean_f1,
            "fold_scores": list(self.fold_scores),
            "params": self.params,
            "best_params": self.best_params,
            "min_shift": [dict(m) for m in self.min_shift] or None,
            "search": self.search,
            "error": self.error,
        }


def _mean_feature_scores(cv: CVResult) -> dict[str, dict[str, float]]:
    """Average each selector method's score per feature over the folds that scored it."""
    collected: dict[str, dict[str, list[float]]] = {}
    for m in cv.manifests:
        for s in m.selector_scores:
            per_feature = collected.setdefault(s.method, {})
            for name, score in zip(s.feature_names, s.scores):
                per_feature.setdefault(name, []).append(score)
    return {method: {n: float(np.mean(v)) for n, v in scores.items()} for method, scores in collected.items()}


def run_cell(cfg: ExperimentConfig, t: Table, variant_name: str, group_id: str) -> CellResult:
    """Evaluate one (variant, group) cell. Failures are returned, never raised."""
    variant = resolve_variant(variant_name)
    seed = cell_seed(cfg, variant.name, group_id)
    log_cell_start(logger, variant.name, group_id, seed)
    try:
        sub = select_group(t, get_group(group_id))
        plan = fold_plan(cfg, sub)
        pipeline = build_pipeline(cfg, variant)
        if variant.search:
            result = grid_search(pipeline, grid_for(cfg, variant), sub, plan, seed, search_plan(cfg, sub))
            cv, best, search = result.best_cv, result.best_params, result.to_dict()
        else:
            cv, best, search = cross_validate(pipeline, sub, plan, seed), None, None
    except (HarnessError, ValueError, TypeError) as e:
        return CellResult(variant.name, group_id, seed, success=False, error=str(e))
    return CellResult(
        variant=variant.name,
        group=group_id,
        seed=seed,
        success=True,
        mean_f1=cv.mean,
        fold_scores=cv.fold_scores,
        params=dict(cv.manifests[0].model_params),
        best_params=best,
        search=search,
        feature_scores=_mean_feature_scores(cv),
        min_shift=tuple(m.min_shift for m in cv.manifests if m.min_shift is not None),
    )


def replay_cell(cfg: ExperimentConfig, t: Table, variant_name: str, group_id: str, params: dict[str, Any]) -> CVResult:
    """Re-score a cell with fixed hyperparameters and no search."""
    variant = resolve_variant(variant_name)
    sub = select_group(t, get_group(group_id))
    pipeline = build_pipeline(cfg, variant).with_params(**params)
    return cross_validate(pipeline, sub, fold_plan(cfg, sub), cell_seed(cfg, variant.name, group_id))


@dataclass(frozen=True)
class ResultsMatrix:
    config: ExperimentConfig
    variants: tuple[str, ...]
    groups: tuple[str, ...]
    cells: dict[tuple[str, str], CellResult]
    run_id: str = ""
    wall_time_s: float = 0.0

    def cell(self, variant: str, group: str) -> CellResult:
        return self.cells[(variant, group)]

    def frame(self) -> pd.DataFrame:
        """Mean f1 per cell, variants as rows and groups as columns; failed cells are NaN."""
        rows = {
            v: [self.cells[(v, g)].mean_f1 if self.cells[(v, g)].success else np.nan for g in self.groups]
            for v in self.variants
        }
        frame = pd.DataFrame.from_dict(rows, orient="index", columns=list(self.groups), dtype=float)
        frame.index.name = "Classifier"
        return frame

    def failed(self) -> list[CellResult]:
        return [c for c in self.cells.values() if not c.success]

    @property
    def is_partial(self) -> bool:
        return bool(self.failed())

    def group_stats(self) -> list[GroupStat]:
        """Mean and population SD per group over its defined cells; groups with none are left out."""
        return aggregate_group_stats(self.frame().dropna(axis=1, how="all"), allow_missing=True)

    def best_cell(self) -> CellResult | None:
        """Highest mean f1 over defined cells; ties go to the earlier variant, then group."""
        best = None
        for v in self.variants:
            for g in self.groups:
                c = self.cells[(v, g)]
                if c.success and (best is None or c.mean_f1 > best.mean_f1):
                    best = c
        return best


def _progress(total: int) -> tqdm:
    return tqdm(total=total, desc="cells", unit="cell", disable=not sys.stderr.isatty())


def run_matrix(cfg: ExperimentConfig, t: Table | None = None) -> ResultsMatrix:
    """Evaluate every configured cell. Cells run in worker processes when cfg.workers > 1.

    Results are keyed and reported in canonical (variant, group) order whatever order the
    workers finish in.
    """
    validate_workers(cfg.workers)
    started = time.perf_counter()
    run_id = str(uuid.uuid4())
    set_run_id(run_id)
    set_run_log_dir(cfg.out_dir)
    if t is None:
        t = load_data(cfg)
    fold_plan(cfg, t)
    variants = tuple(resolve_variant(v).name for v in cfg.classifiers)
    groups = tuple(cfg.groups)
    order = [(v, g) for v in variants for g in groups]
    log_run_start(logger, run_id, len(variants), len(groups), cfg.folds, cfg.seed, cfg.workers)

    cells: dict[tuple[str, str], CellResult] = {}
    with _progress(len(order)) as bar:
        if cfg.workers == 1:
            for v, g in order:
                result = run_cell(cfg, t, v, g)
                cells[(result.variant, result.group)] = result
                _cell_done(result, bar)
        else:
            with ProcessPoolExecutor(
                max_workers=cfg.workers, initializer=configure_logging, initargs=(LOG_LEVEL,)
            ) as pool:
                futures = [pool.submit(run_cell, cfg, t, v, g) for v, g in order]
                for future in futures:
                    result = future.result()
                    cells[(result.variant, result.group)] = result
                    _cell_done(result, bar)

    wall = time.perf_counter() - started
    m = ResultsMatrix(cfg, variants, groups, cells, run_id=run_id, wall_time_s=wall)
    log_run_end(logger, len(cells), len(m.failed()), wall)
    return m


def _cell_done(result: CellResult, bar: tqdm) -> None:
    log_cell_end(
        logger,
        result.variant,
        result.group,
        result.success,
        mean_f1=result.mean_f1,
        best_params=result.best_params,
        error=result.error,
    )
    bar.update(1)
