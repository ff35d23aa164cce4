"""Structured logging with run_id and experiment-run events."""
import json
import logging
import sys
from contextvars import ContextVar
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import structlog

# Context variable for run_id so it is attached to every log in the current run
run_id_ctx: ContextVar[str | None] = ContextVar("run_id", default=None)

# Directory for the per-run JSON-lines audit file; set by the runner once out_dir is known
run_log_dir_ctx: ContextVar[Path | None] = ContextVar("run_log_dir", default=None)


def get_run_id() -> str | None:
    return run_id_ctx.get()


def set_run_id(run_id: str) -> None:
    run_id_ctx.set(run_id)


def set_run_log_dir(directory: Path | None) -> None:
    run_log_dir_ctx.set(directory)


def add_run_id(
    logger: logging.Logger, method_name: str, event_dict: dict[str, Any]
) -> dict[str, Any]:
    """Structlog processor: add run_id to every event."""
    rid = get_run_id()
    if rid:
        event_dict["run_id"] = rid
    return event_dict


def configure_logging(log_level: str = "INFO") -> None:
    """Configure structlog and stdlib logging. Call once at startup."""
    level = getattr(logging, log_level, logging.INFO)
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stdout,
        level=level,
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            add_run_id,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=True)
            if log_level == "DEBUG"
            else structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)


# Convenience: log run events with consistent event names
def log_table_loaded(
    logger: structlog.stdlib.BoundLogger,
    source: str,
    row_count: int,
    col_count: int,
) -> None:
    logger.info("table_loaded", source=source, row_count=row_count, col_count=col_count)


def log_run_start(
    logger: structlog.stdlib.BoundLogger,
    run_id: str,
    n_variants: int,
    n_groups: int,
    folds: int,
    seed: int,
    workers: int,
) -> None:
    logger.info(
        "run_start",
        run_id=run_id,
        n_variants=n_variants,
        n_groups=n_groups,
        folds=folds,
        seed=seed,
        workers=workers,
    )
    _append_run_event("run_start", {"n_variants": n_variants, "n_groups": n_groups, "folds": folds, "seed": seed})


def log_cell_start(
    logger: structlog.stdlib.BoundLogger,
    variant: str,
    group: str,
    seed: int,
) -> None:
    logger.debug("cell_start", variant=variant, group=group, seed=seed)


def log_cell_end(
    logger: structlog.stdlib.BoundLogger,
    variant: str,
    group: str,
    success: bool,
    mean_f1: float | None = None,
    best_params: dict[str, Any] | None = None,
    error: str | None = None,
) -> None:
    log = logger.info if success else logger.warning
    log(
        "cell_end",
        variant=variant,
        group=group,
        success=success,
        mean_f1=mean_f1,
        best_params=best_params,
        error=error,
    )
    _append_run_event(
        "cell_end",
        {"variant": variant, "group": group, "success": success, "mean_f1": mean_f1, "error": error},
    )


def log_fold_failure(
    logger: structlog.stdlib.BoundLogger,
    fold: int,
    reason: str,
) -> None:
    logger.warning("fold_failure", fold=fold, reason=reason)


def log_grid_point(
    logger: structlog.stdlib.BoundLogger,
    family: str,
    params: dict[str, Any],
    mean_score: float | None,
    error: str | None = None,
) -> None:
    logger.debug("grid_point", family=family, params=params, mean_score=mean_score, error=error)


def log_run_end(
    logger: structlog.stdlib.BoundLogger,
    n_cells: int,
    n_failed: int,
    wall_time_s: float,
) -> None:
    logger.info("run_end", n_cells=n_cells, n_failed=n_failed, wall_time_s=round(wall_time_s, 3))
    _append_run_event("run_end", {"n_cells": n_cells, "n_failed": n_failed, "wall_time_s": wall_time_s})


# --- Per-run .log file (JSON lines next to the reports) ---


def _append_run_event(event: str, payload: dict[str, Any]) -> None:
    """Append one JSON line to <run_log_dir>/run_<run_id>.log. Fails silently on OSError."""
    directory = run_log_dir_ctx.get()
    run_id = get_run_id()
    if directory is None or not run_id:
        return
    try:
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"run_{run_id}.log"
        record = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "run_id": run_id,
            "event": event,
            **payload,
        }
        with open(path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record, default=str) + "\n")
    except OSError:
        pass
