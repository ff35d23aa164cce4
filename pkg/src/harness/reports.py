"""Report files for a finished matrix, and the readers behind `aggregate` and `plot`."""
import json
import platform
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from src.config import REPORT_DECIMALS
from src.data import GROUPS
from src.errors import DataError
from src.evaluation import GroupStat, aggregate_group_stats
from src.harness.experiment import grid_for
from src.harness.runner import ResultsMatrix
from src.harness.variants import resolve_variant
from src.logging_utils import get_logger
from src.seeds import derive_seed
from src.selection import FeatureScores

logger = get_logger(__name__)

FAILED = "FAILED"
MATRIX_FILE = "f1_matrix.csv"
STATS_FILE = "group_stats.csv"
MANIFEST_FILE = "manifest.json"
TIMING_FILE = "timing.json"
FEATURE_SCORES_FILE = "feature_scores.csv"
BEST_COLUMN = "best_group"


def fmt(value: float) -> str:
    return f"{value:.{REPORT_DECIMALS}f}"


def matrix_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Formatted f1 matrix; best_group names each row's highest group (first on ties)."""
    out = pd.DataFrame(index=frame.index)
    for group in frame.columns:
        out[group] = [FAILED if np.isnan(v) else fmt(v) for v in frame[group]]
    best = []
    for _, row in frame.iterrows():
        defined = row.dropna()
        best.append(str(defined.idxmax()) if not defined.empty else "")
    out[BEST_COLUMN] = best
    out.index.name = "Classifier"
    return out.reset_index()


def stats_table(stats: list[GroupStat]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "group": s.group,
                "description": GROUPS[s.group].description if s.group in GROUPS else "",
                "mean": fmt(s.mean),
                "sd": fmt(s.sd),
                "n": s.n,
            }
            for s in stats
        ],
        columns=["group", "description", "mean", "sd", "n"],
    )


def feature_score_table(m: ResultsMatrix) -> pd.DataFrame | None:
    """Per group, the fold-averaged selector scores of its first successful cell; None if no selector ran."""
    rows: list[dict[str, Any]] = []
    for g in m.groups:
        cell = next((m.cell(v, g) for v in m.variants if m.cell(v, g).success and m.cell(v, g).feature_scores), None)
        if cell is None:
            continue
        for method, scores in cell.feature_scores.items():
            fs = FeatureScores.from_scores(list(scores.values()), method, list(scores))
            rows.extend({"group": g, **r} for r in fs.to_rows())
    if not rows:
        return None
    return pd.DataFrame(rows, columns=["group", "feature", "method", "score", "rank"])


def _versions() -> dict[str, str]:
    return {"python": platform.python_version(), "numpy": np.__version__, "pandas": pd.__version__}


def build_manifest(m: ResultsMatrix) -> dict[str, Any]:
    """Everything needed to reproduce the run. No wall-clock values, so identical runs give identical bytes."""
    cfg = m.config
    grids = {}
    for v in m.variants:
        variant = resolve_variant(v)
        if variant.search:
            grids[v] = grid_for(cfg, variant)
    best = m.best_cell()
    return {
        "config": cfg.model_dump(mode="json"),
        "seeds": {
            "master": cfg.seed,
            "folds": derive_seed(cfg.seed, "folds"),
            "cells": {f"{c.variant}/{c.group}": c.seed for c in (m.cell(v, g) for v in m.variants for g in m.groups)},
        },
        "grids": grids,
        "cells": [m.cell(v, g).to_dict() for v in m.variants for g in m.groups],
        "failed": [{"variant": c.variant, "group": c.group, "error": c.error} for c in m.failed()],
        "best_cell": None if best is None else {"variant": best.variant, "group": best.group, "mean_f1": best.mean_f1},
        "versions": _versions(),
    }


def _write_csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, lineterminator="\n", float_format="%.6g")


def emit_reports(m: ResultsMatrix, out_dir: str | Path | None = None) -> list[Path]:
    """Write the matrix, group stats, manifest and timing files (plus feature scores when a
    selector ran) into out_dir, default the config's out_dir. Returns the written paths."""
    directory = Path(out_dir) if out_dir is not None else Path(m.config.out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    written = []

    path = directory / MATRIX_FILE
    _write_csv(matrix_table(m.frame()), path)
    written.append(path)

    path = directory / STATS_FILE
    _write_csv(stats_table(m.group_stats()), path)
    written.append(path)

    path = directory / MANIFEST_FILE
    path.write_text(json.dumps(build_manifest(m), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(path)

    path = directory / TIMING_FILE
    timing = {"run_id": m.run_id, "wall_time_s": round(m.wall_time_s, 3), "cells": len(m.cells)}
    path.write_text(json.dumps(timing, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(path)

    scores = feature_score_table(m) if m.config.selector != "none" else None
    if scores is not None:
        path = directory / FEATURE_SCORES_FILE
        _write_csv(scores, path)
        written.append(path)
    logger.info("reports_written", out_dir=str(directory), files=[p.name for p in written])
    return written


def read_matrix_csv(path: str | Path) -> pd.DataFrame:
    """Load a classifiers x groups f1 table (the published layout or our own f1_matrix.csv).

    The first column names the classifier; best_group is dropped; FAILED or empty cells become NaN.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"matrix file not found: {path}")
    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(f"cannot parse matrix file {path}: {e}") from e
    if raw.shape[1] < 2:
        raise DataError(f"matrix file {path} needs a classifier column and at least one group column")
    raw = raw.set_index(raw.columns[0]).drop(columns=[BEST_COLUMN], errors="ignore")
    frame = pd.DataFrame(index=raw.index)
    for group in raw.columns:
        values = []
        for row, cell in zip(raw.index, raw[group]):
            cell = cell.strip()
            if cell in ("", FAILED):
                values.append(np.nan)
                continue
            try:
                values.append(float(cell))
            except ValueError:
                raise DataError(f"{path}: row '{row}', group {group}: '{cell}' is not a number") from None
        frame[group] = values
    return frame


def aggregate_matrix_file(path: str | Path) -> list[GroupStat]:
    """Group stats of a matrix file; every cell must be defined."""
    frame = read_matrix_csv(path)
    try:
        return aggregate_group_stats(frame)
    except ValueError as e:
        raise DataError(f"{path}: {e}") from e


def plot_matrix(frame: pd.DataFrame, out_path: str | Path) -> Path:
    """Grouped bars: one cluster per group, one bar per classifier."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(10, 4.5))
    x = np.arange(len(frame.columns))
    width = 0.8 / max(1, len(frame.index))
    for i, (name, row) in enumerate(frame.iterrows()):
        ax.bar(x - 0.4 + (i + 0.5) * width, row.to_numpy(dtype=float), width, label=str(name))
    ax.set_xticks(x, [str(c) for c in frame.columns])
    ax.set_xlabel("variable group")
    ax.set_ylabel("f1-score")
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize=7, ncol=3, frameon=False)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
