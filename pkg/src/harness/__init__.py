"""Config-driven experiment matrix: variants, configs, runner, reports and the CLI."""
from src.harness.experiment import DataSource, ExperimentConfig, load_config, load_data, validate_config
from src.harness.reports import emit_reports, read_matrix_csv
from src.harness.runner import CellResult, ResultsMatrix, replay_cell, run_cell, run_matrix
from src.harness.variants import DEFAULT_GRIDS, VARIANT_NAMES, VariantSpec, resolve_variant

__all__ = [
    "DEFAULT_GRIDS",
    "VARIANT_NAMES",
    "CellResult",
    "DataSource",
    "ExperimentConfig",
    "ResultsMatrix",
    "VariantSpec",
    "emit_reports",
    "load_config",
    "load_data",
    "read_matrix_csv",
    "replay_cell",
    "resolve_variant",
    "run_cell",
    "run_matrix",
    "validate_config",
]
