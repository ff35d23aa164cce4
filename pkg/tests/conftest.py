"""Shared fixtures: small tables, schemas and config files."""
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import structlog

from src.data import ColumnSpec, generate_synthetic, make_table
from src.logging_utils import configure_logging

# Every category present, few columns each, so matrix runs stay quick
SMALL_COUNTS = {
    "socioeconomic": 4,
    "psychometric_eq5": 3,
    "psychometric_salamanca": 3,
    "psychometric_acta": 3,
    "psychometric_other": 3,
    "analytical": 4,
}


@pytest.fixture(scope="session", autouse=True)
def _quiet_logging():
    configure_logging("WARNING")
    # loggers bound to a capsys stream must not outlive the test that captured it
    structlog.configure(cache_logger_on_first_use=False)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def tiny_schema() -> list[ColumnSpec]:
    return [
        ColumnSpec(name="age", kind="continuous", category="socioeconomic"),
        ColumnSpec(name="gender", kind="categorical", category="socioeconomic"),
        ColumnSpec(name="smoker", kind="binary", category="socioeconomic"),
        ColumnSpec(name="success", kind="binary", category="outcome"),
    ]


@pytest.fixture
def schema_file(tmp_path, tiny_schema) -> Path:
    path = tmp_path / "tiny.schema.json"
    path.write_text(json.dumps({"columns": [c.model_dump() for c in tiny_schema]}), encoding="utf-8")
    return path


@pytest.fixture
def small_table():
    return generate_synthetic(seed=3, n_rows=40, n_per_category=SMALL_COUNTS, signal="noisy")


@pytest.fixture
def separable_table():
    return generate_synthetic(seed=5, n_rows=48, n_per_category=SMALL_COUNTS, signal="separable")


@pytest.fixture
def numeric_table():
    """Two continuous features and a 0/1 outcome, 24 rows, 10 positives."""
    r = np.random.default_rng(99)
    y = np.r_[np.ones(10, dtype=int), np.zeros(14, dtype=int)]
    frame = pd.DataFrame(
        {
            "x1": np.round(r.normal(size=24) + y, 4),
            "x2": np.round(r.normal(size=24), 4),
            "success": y,
        }
    )
    schema = [
        ColumnSpec(name="x1", kind="continuous", category="analytical"),
        ColumnSpec(name="x2", kind="continuous", category="analytical"),
        ColumnSpec(name="success", kind="binary", category="outcome"),
    ]
    return make_table(schema, frame)


@pytest.fixture
def write_config(tmp_path):
    """Write a config dict as JSON and return its path."""

    def _write(cfg: dict, name: str = "experiment.json") -> Path:
        cfg = {"out_dir": str(tmp_path / "out"), **cfg}
        path = tmp_path / name
        path.write_text(json.dumps(cfg), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def small_config(write_config):
    def _make(**fields) -> Path:
        cfg = {
            "data": {"synthetic": {"seed": 3, "n_rows": 40, "n_per_category": SMALL_COUNTS, "signal": "noisy"}},
            "folds": 4,
            "seed": 1,
            "workers": 1,
        }
        cfg.update(fields)
        return write_config(cfg)

    return _make
