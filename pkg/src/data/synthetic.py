"""Seeded synthetic tables shaped like the bariatric-surgery cohort (the real one is private)."""
import math
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.data.schema import FEATURE_CATEGORIES, ColumnSpec, Table, make_table
from src.errors import DataError

SignalKind = Literal["separable", "noisy", "none"]
OUTCOME_COLUMN = "success"

# Variables the cohort records per category; padded with numbered columns when more are asked for
NAMED_COLUMNS: dict[str, list[tuple[str, str]]] = {
    "socioeconomic": [
        ("age", "continuous"),
        ("gender", "categorical"),
        ("employment_status", "categorical"),
        ("education_level", "categorical"),
    ],
    "psychometric_eq5": [
        (f"eq5_{item}", "continuous")
        for item in ("mobility", "self_care", "activity", "pain", "depression", "vas")
    ],
    "psychometric_salamanca": [
        (f"sal_{trait}", "continuous")
        for trait in (
            "paranoid", "schizoid", "schizotypal", "histrionic", "antisocial", "narcissistic",
            "impulsive", "borderline", "anankastic", "dependent", "anxious",
        )
    ],
    "psychometric_acta": [
        (f"acta_{stage}", "continuous")
        for stage in ("precontemplative", "contemplative", "decision", "action", "maintenance", "relapse")
    ],
    "psychometric_other": [
        ("bite_symptom", "continuous"),
        ("bite_severity", "continuous"),
        ("plutchik_score", "continuous"),
        ("personal_psych_history", "binary"),
        ("family_psych_history", "binary"),
        ("current_psych_disorder", "binary"),
    ],
    "analytical": [
        (analyte, "continuous")
        for analyte in (
            "hb", "hct", "glucose", "hba1c", "insulin", "cholesterol", "triglycerides", "hdl",
            "uric_acid", "got_ast", "gpt_alt", "ggt", "iron", "ferritin", "transferrin", "albumin",
            "prealbumin", "phosphorus", "pth", "osteocalcin", "crosslaps", "vitamin_d", "crp",
        )
    ],
}
PAD_PREFIX = {
    "socioeconomic": "socio",
    "psychometric_eq5": "eq5",
    "psychometric_salamanca": "sal",
    "psychometric_acta": "acta",
    "psychometric_other": "psych",
    "analytical": "lab",
}
# Location and scale of continuous values per category
VALUE_SCALE = {
    "socioeconomic": (45.0, 10.0),
    "psychometric_eq5": (50.0, 10.0),
    "psychometric_salamanca": (50.0, 10.0),
    "psychometric_acta": (50.0, 10.0),
    "psychometric_other": (50.0, 10.0),
    "analytical": (100.0, 25.0),
}
CATEGORICAL_LEVELS = {
    "gender": ["female", "male"],
    "employment_status": ["employed", "retired", "student", "unemployed"],
    "education_level": ["primary", "secondary", "university"],
}
DEFAULT_LEVELS = ["level_a", "level_b", "level_c"]
# 70 features in total, as in the cohort
DEFAULT_COUNTS: dict[str, int] = {
    "socioeconomic": 12,
    "psychometric_eq5": 6,
    "psychometric_salamanca": 11,
    "psychometric_acta": 6,
    "psychometric_other": 6,
    "analytical": 29,
}


class SyntheticSpec(BaseModel):
    """Parameters of generate_synthetic, as read from a config or a `synth` spec file."""

    model_config = ConfigDict(extra="forbid")

    seed: int = 0
    n_rows: int = Field(73, ge=2)
    n_per_category: dict[str, int] = Field(default_factory=lambda: dict(DEFAULT_COUNTS))
    positive_rate: float = Field(0.542, gt=0, lt=1)
    signal: SignalKind = "none"

    @field_validator("n_per_category")
    @classmethod
    def _known_categories(cls, v: dict[str, int]) -> dict[str, int]:
        unknown = sorted(set(v) - set(FEATURE_CATEGORIES))
        if unknown:
            raise ValueError(f"unknown categories {unknown}; valid: {list(FEATURE_CATEGORIES)}")
        return v


def _padded_kind(category: str, index: int) -> str:
    if category == "socioeconomic":
        return "continuous" if index % 2 == 0 else "binary"
    return "continuous"


def synthetic_schema(n_per_category: dict[str, int]) -> list[ColumnSpec]:
    """Feature columns per category (named first, then padded), then the outcome."""
    columns: list[ColumnSpec] = []
    for category in FEATURE_CATEGORIES:
        count = n_per_category.get(category, 0)
        if count < 0:
            raise DataError(f"negative column count for {category}: {count}")
        named = NAMED_COLUMNS[category][:count]
        for name, kind in named:
            columns.append(ColumnSpec(name=name, kind=kind, category=category))
        for i in range(len(named), count):
            name = f"{PAD_PREFIX[category]}_{i + 1:02d}"
            columns.append(ColumnSpec(name=name, kind=_padded_kind(category, i), category=category))
    columns.append(ColumnSpec(name=OUTCOME_COLUMN, kind="binary", category="outcome"))
    return columns


def planted_columns(n_per_category: dict[str, int]) -> list[str]:
    """Columns that carry class signal: the first ceil(m/2) of the m continuous columns per category."""
    schema = synthetic_schema(n_per_category)
    planted: list[str] = []
    for category in FEATURE_CATEGORIES:
        continuous = [c.name for c in schema if c.category == category and c.kind == "continuous"]
        planted.extend(continuous[: math.ceil(len(continuous) / 2)])
    return planted


def planted_directions(n_per_category: dict[str, int]) -> dict[str, int]:
    """+1 where positives sit high, -1 where they sit low; alternating within each category.

    Mixed directions keep the class signal visible to mass-share scorers such as
    ComplementNB, which cannot tell classes apart when every column rises together.
    """
    schema = synthetic_schema(n_per_category)
    planted = set(planted_columns(n_per_category))
    directions: dict[str, int] = {}
    for category in FEATURE_CATEGORIES:
        names = [c.name for c in schema if c.category == category and c.name in planted]
        directions.update({name: 1 if i % 2 == 0 else -1 for i, name in enumerate(names)})
    return directions


def positive_count(n_rows: int, positive_rate: float) -> int:
    """Round half up: 73 rows at 0.542 -> 40 positives."""
    return int(math.floor(n_rows * positive_rate + 0.5))


def generate_synthetic(
    seed: int,
    n_rows: int,
    n_per_category: dict[str, int] | None = None,
    positive_rate: float = 0.542,
    signal: SignalKind = "none",
) -> Table:
    """Deterministic table for a fixed (seed, parameters).

    separable: on planted columns one class draws from [0.5, 1.5] and the other from
    [-1.5, -0.5] (in category units), positives high or low per planted_directions; any
    single planted column splits the classes. noisy: planted columns shift positives by one
    standard deviation in their direction. none: labels are independent of features.
    """
    counts = dict(DEFAULT_COUNTS if n_per_category is None else n_per_category)
    if n_rows < 2:
        raise DataError(f"n_rows must be >= 2, got {n_rows}")
    if not 0 < positive_rate < 1:
        raise DataError(f"positive_rate must be in (0, 1), got {positive_rate}")
    if signal not in ("separable", "noisy", "none"):
        raise DataError(f"unknown signal '{signal}'")
    n_pos = positive_count(n_rows, positive_rate)
    if n_pos < 1 or n_pos > n_rows - 1:
        raise DataError(f"{n_rows} rows at positive_rate {positive_rate} leave a class empty")
    schema = synthetic_schema(counts)
    if len(schema) < 2:
        raise DataError("n_per_category requests no feature columns")

    rng = np.random.default_rng(seed)
    y = rng.permutation(np.r_[np.ones(n_pos, dtype=int), np.zeros(n_rows - n_pos, dtype=int)])
    planted = planted_directions(counts) if signal != "none" else {}

    data: dict[str, object] = {}
    for spec in schema[:-1]:
        if spec.kind == "categorical":
            levels = CATEGORICAL_LEVELS.get(spec.name, DEFAULT_LEVELS)
            data[spec.name] = rng.choice(levels, size=n_rows).astype(object)
            continue
        if spec.kind == "binary":
            data[spec.name] = rng.integers(0, 2, size=n_rows)
            continue
        loc, scale = VALUE_SCALE[spec.category]
        if spec.name in planted and signal == "separable":
            z = rng.uniform(0.0, 1.0, size=n_rows) + planted[spec.name] * (2.0 * y - 1.0) - 0.5
        elif spec.name in planted:
            z = rng.standard_normal(n_rows) + planted[spec.name] * y
        else:
            z = rng.standard_normal(n_rows)
        data[spec.name] = np.round(loc + scale * z, 4)
    data[OUTCOME_COLUMN] = y
    return make_table(schema, pd.DataFrame(data, columns=[c.name for c in schema]))


def generate_from_spec(spec: SyntheticSpec) -> Table:
    return generate_synthetic(spec.seed, spec.n_rows, spec.n_per_category, spec.positive_rate, spec.signal)
