"""Experiment configs: YAML or JSON documents checked by pydantic models."""
import inspect
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.classifiers import family_names, get_family
from src.config import MATRIX_SEED, MATRIX_WORKERS, RESULTS_DIR
from src.data import GROUP_IDS, SyntheticSpec, Table, generate_from_spec, get_group, load_schema, load_table, select_group
from src.errors import ConfigError, DataError
from src.evaluation import FoldPlan, PipelineSpec, kfold_plan, lattice
from src.harness.variants import VARIANT_NAMES, VariantSpec, default_grid, resolve_variant
from src.logging_utils import get_logger, log_table_loaded
from src.seeds import derive_seed

logger = get_logger(__name__)

# Fold count of the separate plan used to choose hyperparameters when search_split = inner
INNER_FOLDS = 4


class DataSource(BaseModel):
    """Either a CSV file with its schema file, or a synthetic table spec."""

    model_config = ConfigDict(extra="forbid")

    path: Path | None = None
    schema_path: Path | None = None
    synthetic: SyntheticSpec | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "DataSource":
        has_file = self.path is not None or self.schema_path is not None
        if has_file and self.synthetic is not None:
            raise ValueError("give either path + schema_path or synthetic, not both")
        if not has_file and self.synthetic is None:
            raise ValueError("data needs path + schema_path, or synthetic")
        if has_file and (self.path is None or self.schema_path is None):
            raise ValueError("file data needs both path and schema_path")
        return self

    def describe(self) -> str:
        if self.synthetic is not None:
            s = self.synthetic
            return f"synthetic(seed={s.seed}, n_rows={s.n_rows}, signal={s.signal})"
        return str(self.path)


def _fit_parameters(family: str) -> set[str]:
    params = inspect.signature(get_family(family).fit).parameters
    return {name for name in list(params)[2:]}


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    data: DataSource
    groups: list[str] = Field(default_factory=lambda: list(GROUP_IDS))
    classifiers: list[str] = Field(default_factory=lambda: list(VARIANT_NAMES))
    folds: int = Field(8, ge=2)
    stratified: bool = True
    seed: int = Field(MATRIX_SEED, ge=0)
    # family -> parameter -> values; replaces that family's default grid
    grids: dict[str, dict[str, list[Any]]] = Field(default_factory=dict)
    selector: Literal["none", "kbest", "extra_trees", "both"] = "kbest"
    selector_k: int | None = Field(None, ge=1)
    extra_trees_n: int = Field(100, ge=1)
    metric: Literal["f1", "f1_weighted"] = "f1"
    resample_scope: Literal["fold", "global"] = "fold"
    search_split: Literal["same", "inner"] = "same"
    smote_k: int = Field(5, ge=1)
    workers: int = Field(MATRIX_WORKERS, ge=1)
    out_dir: Path = RESULTS_DIR

    @field_validator("groups")
    @classmethod
    def _known_groups(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("groups must name at least one group")
        for g in v:
            get_group(g)
        return list(dict.fromkeys(v))

    @field_validator("classifiers")
    @classmethod
    def _known_classifiers(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("classifiers must name at least one variant")
        return list(dict.fromkeys(resolve_variant(name).name for name in v))

    @field_validator("grids")
    @classmethod
    def _known_grid_params(cls, v: dict[str, dict[str, list[Any]]]) -> dict[str, dict[str, list[Any]]]:
        for family, grid in v.items():
            if family not in family_names():
                raise ValueError(f"grid for unknown family '{family}'; valid: {', '.join(family_names())}")
            unknown = sorted(set(grid) - _fit_parameters(family))
            if unknown:
                raise ValueError(f"{family} has no parameters {unknown}; valid: {sorted(_fit_parameters(family))}")
            lattice(grid)
        return v


def _diagnostics(e: ValidationError) -> list[str]:
    lines = []
    for err in e.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        lines.append(f"{loc}: {err['msg']}")
    return lines


def _resolve_paths(cfg: ExperimentConfig, base: Path) -> ExperimentConfig:
    """Relative data paths are taken relative to the config file's directory."""
    data = cfg.data
    if data.path is None:
        return cfg
    update = {
        "path": data.path if data.path.is_absolute() else base / data.path,
        "schema_path": data.schema_path if data.schema_path.is_absolute() else base / data.schema_path,
    }
    return cfg.model_copy(update={"data": data.model_copy(update=update)})


def load_config(path: str | Path, overrides: dict[str, Any] | None = None) -> ExperimentConfig:
    """Read and validate a config file. overrides (CLI flags) replace top-level fields; None values are ignored."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigError(f"config file {path} is not valid JSON/YAML: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a mapping")
    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        cfg = ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        diagnostics = _diagnostics(e)
        raise ConfigError(f"invalid config {path}: {len(diagnostics)} problem(s)", diagnostics) from e
    return _resolve_paths(cfg, path.parent)


def load_data(cfg: ExperimentConfig) -> Table:
    if cfg.data.synthetic is not None:
        t = generate_from_spec(cfg.data.synthetic)
    else:
        t = load_table(cfg.data.path, load_schema(cfg.data.schema_path))
    log_table_loaded(logger, cfg.data.describe(), t.row_count, t.col_count)
    return t


def cell_seed(cfg: ExperimentConfig, variant: str, group: str) -> int:
    """Each (variant, group) cell gets its own seed, so a cell scores the same alone or in a full run."""
    return derive_seed(cfg.seed, variant, group)


def fold_plan(cfg: ExperimentConfig, t: Table) -> FoldPlan:
    """Reporting folds. Seeded from the master seed alone so every cell shares them."""
    if cfg.folds > t.row_count:
        raise ConfigError(f"folds = {cfg.folds} exceeds the {t.row_count} data rows")
    return kfold_plan(t.row_count, cfg.folds, t.labels(), cfg.stratified, derive_seed(cfg.seed, "folds"))


def search_plan(cfg: ExperimentConfig, t: Table) -> FoldPlan | None:
    """The separate plan hyperparameters are chosen on, or None to choose on the reporting folds."""
    if cfg.search_split == "same":
        return None
    k = min(INNER_FOLDS, t.row_count)
    return kfold_plan(t.row_count, k, t.labels(), cfg.stratified, derive_seed(cfg.seed, "inner-folds"))


def build_pipeline(cfg: ExperimentConfig, variant: VariantSpec) -> PipelineSpec:
    return PipelineSpec(
        family=variant.family,
        selector=cfg.selector,
        selector_k=cfg.selector_k,
        extra_trees_n=cfg.extra_trees_n,
        resampler=variant.resampler,
        smote_k=cfg.smote_k,
        resample_scope=cfg.resample_scope,
        metric=cfg.metric,
    )


def grid_for(cfg: ExperimentConfig, variant: VariantSpec) -> dict[str, list[Any]]:
    return cfg.grids.get(variant.family) or default_grid(variant.family)


def validate_config(path: str | Path, overrides: dict[str, Any] | None = None) -> list[str]:
    """Every problem found in the config, one line each; empty when it is valid.

    Checks the schema, resolves group and classifier names, loads the data, checks the
    fold count against the row count, builds each cell's pipeline and derives its seed.
    """
    try:
        cfg = load_config(path, overrides)
    except ConfigError as e:
        return list(e.diagnostics)
    try:
        t = load_data(cfg)
    except DataError as e:
        return [f"data: {e}"]
    diagnostics: list[str] = []
    try:
        fold_plan(cfg, t)
    except (ConfigError, ValueError) as e:
        diagnostics.append(f"folds: {e}")
    for g in cfg.groups:
        try:
            select_group(t, get_group(g))
        except ValueError as e:
            diagnostics.append(f"groups: {e}")
    for name in cfg.classifiers:
        variant = resolve_variant(name)
        try:
            build_pipeline(cfg, variant)
            if variant.search:
                lattice(grid_for(cfg, variant))
        except ValueError as e:
            diagnostics.append(f"classifiers: {name}: {e}")
        for g in cfg.groups:
            cell_seed(cfg, variant.name, g)
    return diagnostics


def load_synthetic_spec(path: str | Path, seed: int | None = None) -> SyntheticSpec:
    """Read a `synth` spec file; seed, when given, replaces the file's seed."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"synthetic spec not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"synthetic spec {path} is not valid JSON/YAML: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"synthetic spec {path} must hold a mapping")
    if seed is not None:
        raw["seed"] = seed
    try:
        return SyntheticSpec.model_validate(raw)
    except ValidationError as e:
        diagnostics = _diagnostics(e)
        raise ConfigError(f"invalid synthetic spec {path}: {len(diagnostics)} problem(s)", diagnostics) from e
