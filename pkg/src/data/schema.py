"""Column schema, the immutable Table, and CSV + schema-sidecar ingestion."""
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Sequence

import numpy as np
import pandas as pd
import yaml
from pydantic import BaseModel, ConfigDict, ValidationError

from src.errors import DataError

ColumnKind = Literal["categorical", "continuous", "binary"]
Category = Literal[
    "socioeconomic",
    "psychometric_eq5",
    "psychometric_salamanca",
    "psychometric_acta",
    "psychometric_other",
    "analytical",
    "outcome",
]
FEATURE_CATEGORIES: tuple[str, ...] = (
    "socioeconomic",
    "psychometric_eq5",
    "psychometric_salamanca",
    "psychometric_acta",
    "psychometric_other",
    "analytical",
)


class ColumnSpec(BaseModel):
    """One column of a dataset: name, value kind and variable-group category."""

    model_config = ConfigDict(frozen=True)

    name: str
    kind: ColumnKind
    category: Category


def validate_schema(schema: Sequence[ColumnSpec]) -> None:
    """Unique names; exactly one outcome column and it is binary."""
    names = [c.name for c in schema]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise DataError(f"schema column names must be unique; duplicated: {dupes}")
    outcomes = [c for c in schema if c.category == "outcome"]
    if len(outcomes) != 1:
        raise DataError(f"schema must have exactly one outcome column, found {len(outcomes)}")
    if outcomes[0].kind != "binary":
        raise DataError(f"outcome column '{outcomes[0].name}' must be binary, got {outcomes[0].kind}")


def load_schema(path: str | Path) -> list[ColumnSpec]:
    """Read a JSON (or YAML) schema sidecar: a list of columns or {"columns": [...]}."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"schema file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise DataError(f"schema file {path} is not valid JSON/YAML: {e}") from e
    if isinstance(raw, dict):
        raw = raw.get("columns")
    if not isinstance(raw, list):
        raise DataError(f"schema file {path} must hold a list of columns")
    try:
        schema = [ColumnSpec.model_validate(item) for item in raw]
    except ValidationError as e:
        raise DataError(f"schema file {path}: {e}") from e
    validate_schema(schema)
    return schema


@dataclass(frozen=True, eq=False)
class Table:
    """Rectangular dataset. Never mutated: every operation returns a new Table.

    frame holds the cells in schema order; categorical columns hold raw strings until
    encode_categoricals, every other column is numeric.
    """

    schema: tuple[ColumnSpec, ...]
    frame: pd.DataFrame

    def __post_init__(self) -> None:
        names = [c.name for c in self.schema]
        if list(self.frame.columns) != names:
            raise DataError(f"frame columns {list(self.frame.columns)} do not match schema {names}")

    @property
    def row_count(self) -> int:
        return int(self.frame.shape[0])

    @property
    def col_count(self) -> int:
        return len(self.schema)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.schema]

    @property
    def outcome(self) -> ColumnSpec:
        return next(c for c in self.schema if c.category == "outcome")

    @property
    def feature_specs(self) -> list[ColumnSpec]:
        return [c for c in self.schema if c.category != "outcome"]

    @property
    def feature_names(self) -> list[str]:
        return [c.name for c in self.feature_specs]

    def column(self, name: str) -> ColumnSpec:
        for c in self.schema:
            if c.name == name:
                return c
        raise KeyError(name)

    def is_encoded(self) -> bool:
        return all(pd.api.types.is_numeric_dtype(self.frame[c.name]) for c in self.schema)

    def with_frame(self, frame: pd.DataFrame, schema: Sequence[ColumnSpec] | None = None) -> "Table":
        return Table(tuple(schema) if schema is not None else self.schema, frame.reset_index(drop=True))

    def take(self, rows: Sequence[int] | np.ndarray) -> "Table":
        """New table holding the given rows, in the given order."""
        return self.with_frame(self.frame.iloc[np.asarray(rows, dtype=int)].copy())

    def feature_matrix(self) -> np.ndarray:
        """Features as a float matrix (n_rows x n_features). Requires encoded categoricals."""
        if not self.is_encoded():
            raw = [c.name for c in self.feature_specs if not pd.api.types.is_numeric_dtype(self.frame[c.name])]
            raise ValueError(f"columns still hold raw categorical values, encode first: {raw}")
        return self.frame[self.feature_names].to_numpy(dtype=float, copy=True)

    def labels(self) -> np.ndarray:
        return self.frame[self.outcome.name].to_numpy(dtype=int, copy=True)

    def equals(self, other: "Table") -> bool:
        return self.schema == other.schema and self.frame.equals(other.frame)

    def to_csv(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self.frame.to_csv(path, index=False, lineterminator="\n", float_format="%.10g")

    def schema_dict(self) -> dict[str, Any]:
        return {"columns": [c.model_dump() for c in self.schema]}


def make_table(schema: Sequence[ColumnSpec], frame: pd.DataFrame) -> Table:
    """Validate the schema and build a Table from a frame whose columns match it."""
    validate_schema(schema)
    return Table(tuple(schema), frame.reset_index(drop=True))


def _ragged_message(path: Path, parser_error: str) -> str:
    found = re.search(r"Expected (\d+) fields in line (\d+), saw (\d+)", parser_error)
    if found is None:
        return f"ragged row in {path}: {parser_error}"
    expected, line, seen = (int(g) for g in found.groups())
    return f"ragged row {line - 1} in {path}: expected {expected} cells, saw {seen}"


def load_table(path: str | Path, schema: Sequence[ColumnSpec]) -> Table:
    """Read a UTF-8 comma-separated file with one header row matching the schema names exactly.

    Empty cells are missing values and are rejected; categorical cells stay raw strings.
    """
    path = Path(path)
    validate_schema(schema)
    if not path.exists():
        raise DataError(f"data file not found: {path}")
    # header=None: the header row fixes the field count, so a long row is a parse error
    # instead of pandas promoting the first column to an index
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise DataError(f"data file {path} is empty") from e
    except pd.errors.ParserError as e:
        raise DataError(_ragged_message(path, str(e))) from e

    expected = [c.name for c in schema]
    header = [str(h) for h in raw.iloc[0]]
    frame = raw.iloc[1:].reset_index(drop=True)
    frame.columns = header
    if header != expected:
        missing = [n for n in expected if n not in header]
        unexpected = [n for n in header if n not in expected]
        if missing or unexpected:
            raise DataError(f"header of {path} does not match schema: missing {missing}, unexpected {unexpected}")
        raise DataError(f"header of {path} lists the schema columns in a different order: {header}")

    # Short rows come back as NaN, empty cells as ""
    short = frame.isna().any(axis=1)
    if short.any():
        row = int(np.flatnonzero(short.to_numpy())[0])
        raise DataError(f"ragged row {row + 1} in {path}: expected {len(expected)} cells")

    out: dict[str, pd.Series] = {}
    for spec in schema:
        cells = frame[spec.name]
        empty = cells.str.strip() == ""
        if empty.any():
            row = int(np.flatnonzero(empty.to_numpy())[0])
            raise DataError(f"missing value at row {row + 1}, column '{spec.name}'")
        if spec.kind == "categorical":
            out[spec.name] = cells
            continue
        numeric = pd.to_numeric(cells, errors="coerce")
        bad = numeric.isna() | ~np.isfinite(numeric.to_numpy(dtype=float))
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise DataError(
                f"non-numeric value {cells.iloc[row]!r} at row {row + 1}, column '{spec.name}' ({spec.kind})"
            )
        if spec.kind == "binary":
            not_binary = ~numeric.isin([0, 1])
            if not_binary.any():
                row = int(np.flatnonzero(not_binary.to_numpy())[0])
                raise DataError(f"value {cells.iloc[row]!r} at row {row + 1}, column '{spec.name}' is not 0/1")
            numeric = numeric.astype(int)
        out[spec.name] = numeric
    return Table(tuple(schema), pd.DataFrame(out, columns=expected))


def write_schema(schema: Sequence[ColumnSpec], path: str | Path) -> None:
    """Write the JSON schema sidecar for a table."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    payload = {"columns": [c.model_dump() for c in schema]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
