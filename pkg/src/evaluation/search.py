"""Exhaustive grid search over a parameter lattice, scored by cross-validation."""
import itertools
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from src.data.schema import Table
from src.errors import FoldFailure, GridSearchError
from src.evaluation.folds import FoldPlan
from src.evaluation.pipeline import CVResult, PipelineSpec, PreparedFold, cross_validate
from src.logging_utils import get_logger, log_grid_point

logger = get_logger(__name__)

ParamGrid = Mapping[str, Sequence[Any]]


def _value_key(v: Any) -> tuple:
    # numbers first, then strings, None (unbounded) last
    if v is None:
        return (2, 0.0, "")
    if isinstance(v, (bool, int, float)):
        return (0, float(v), "")
    return (1, 0.0, str(v))


def lattice(grid: ParamGrid) -> list[dict[str, Any]]:
    """Every combination of grid values, de-duplicated and in sorted order.

    Parameter names are sorted, values sorted by _value_key, and combinations enumerated
    in that order, so the first point of equal-scoring points is the canonical winner.
    """
    if not grid:
        raise ValueError("parameter grid is empty")
    names = sorted(grid)
    axes = []
    for name in names:
        values = list(grid[name])
        if not values:
            raise ValueError(f"parameter grid gives no values for '{name}'")
        unique: dict[tuple, Any] = {}
        for v in values:
            unique.setdefault(_value_key(v), v)
        axes.append([unique[key] for key in sorted(unique)])
    return [dict(zip(names, combo)) for combo in itertools.product(*axes)]


@dataclass(frozen=True)
class GridPoint:
    params: dict[str, Any]
    mean_score: float | None
    error: str | None = None


@dataclass(frozen=True)
class GridSearchResult:
    best_params: dict[str, Any]
    # mean score on the plan the search ran on
    best_score: float
    # the chosen point scored on the reporting plan
    best_cv: CVResult
    points: tuple[GridPoint, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "best_params": self.best_params,
            "best_score": self.best_score,
            "reported_score": self.best_cv.mean,
            "points": [{"params": p.params, "mean_score": p.mean_score, "error": p.error} for p in self.points],
        }


def grid_search(
    base: PipelineSpec,
    grid: ParamGrid,
    t: Table,
    plan: FoldPlan,
    seed: int = 0,
    search_plan: FoldPlan | None = None,
) -> GridSearchResult:
    """Cross-validate base with every lattice point and keep the best mean score.

    Every point runs with the same seed and folds, so replaying best_params through
    cross_validate reproduces best_cv exactly. With search_plan the points are compared
    on that plan and only the winner is scored on plan. Failing points are recorded and
    skipped; GridSearchError if they all fail.
    """
    chooser = search_plan or plan
    # stages ahead of the classifier do not depend on the lattice point
    prepared: dict[int, PreparedFold] = {}
    points: list[GridPoint] = []
    best: tuple[dict[str, Any], CVResult] | None = None
    for params in lattice(grid):
        try:
            cv = cross_validate(base.with_params(**params), t, chooser, seed, prepared)
        except (FoldFailure, ValueError, TypeError) as e:
            log_grid_point(logger, base.family, params, None, error=str(e))
            points.append(GridPoint(params, None, str(e)))
            continue
        log_grid_point(logger, base.family, params, cv.mean)
        points.append(GridPoint(params, cv.mean))
        if best is None or cv.mean > best[1].mean:
            best = (params, cv)
    if best is None:
        raise GridSearchError(f"all {len(points)} grid points failed for {base.family}; first error: {points[0].error}")
    params, cv = best
    reported = cv if search_plan is None else cross_validate(base.with_params(**params), t, plan, seed)
    return GridSearchResult(best_params=dict(params), best_score=cv.mean, best_cv=reported, points=tuple(points))
