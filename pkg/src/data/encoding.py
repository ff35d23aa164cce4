"""Categorical encoding, z-score scaling and the non-negativity shift.

Every fit_* function sees training rows only; the matching apply_* reuses the fitted
parameters on any split, so cross-validation never leaks test statistics.
"""
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from src.data.schema import Table

# column name -> raw string -> integer code
EncodingMap = dict[str, dict[str, int]]


def encode_categoricals(t: Table) -> tuple[Table, EncodingMap]:
    """Map each categorical column's distinct raw values, sorted lexicographically, to 0, 1, 2, ..."""
    mapping: EncodingMap = {}
    for spec in t.schema:
        if spec.kind != "categorical":
            continue
        values = sorted({str(v) for v in t.frame[spec.name]})
        mapping[spec.name] = {v: i for i, v in enumerate(values)}
    return apply_encoding(t, mapping), mapping


def apply_encoding(t: Table, mapping: EncodingMap) -> Table:
    """Encode t with a map fitted elsewhere. Values the map has never seen get code len(map)."""
    frame = t.frame.copy()
    for name, codes in mapping.items():
        if name not in frame.columns:
            raise ValueError(f"table has no categorical column '{name}' to encode")
        unseen = len(codes)
        frame[name] = frame[name].map(lambda v: codes.get(str(v), unseen)).astype(int)
    return t.with_frame(frame)


def decode_categoricals(t: Table, mapping: EncodingMap) -> Table:
    """Inverse of encode_categoricals: codes back to their raw strings."""
    frame = t.frame.copy()
    for name, codes in mapping.items():
        inverse = {code: raw for raw, code in codes.items()}
        frame[name] = frame[name].map(lambda c: inverse[int(c)]).astype(object)
    return t.with_frame(frame)


@dataclass(frozen=True)
class ScalerParams:
    """Per continuous column: center (mean) and spread (sample standard deviation)."""

    columns: tuple[str, ...]
    center: tuple[float, ...]
    spread: tuple[float, ...]

    def to_dict(self) -> dict[str, Any]:
        return {c: {"center": m, "spread": s} for c, m, s in zip(self.columns, self.center, self.spread)}


def fit_scaler(t: Table, columns: Sequence[str] | None = None) -> ScalerParams:
    """Fit z-score parameters. Defaults to every continuous feature column.

    Spread uses the n-1 denominator; a single row or a constant column gives spread 0,
    which apply_scaler passes through unscaled.
    """
    if t.row_count < 1:
        raise ValueError("fit_scaler needs at least one row")
    if columns is None:
        columns = [c.name for c in t.feature_specs if c.kind == "continuous"]
    centers: list[float] = []
    spreads: list[float] = []
    for name in columns:
        values = t.frame[name].to_numpy(dtype=float)
        centers.append(float(np.mean(values)))
        spread = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        # exact-constant columns can leave rounding residue in the mean
        if np.ptp(values) == 0:
            spread = 0.0
        spreads.append(spread)
    return ScalerParams(tuple(columns), tuple(centers), tuple(spreads))


def apply_scaler(t: Table, p: ScalerParams) -> Table:
    """(x - center) / spread per fitted column; zero-spread columns unchanged."""
    missing = [c for c in p.columns if c not in t.frame.columns]
    if missing:
        raise ValueError(f"table is missing columns fitted by the scaler: {missing}")
    frame = t.frame.copy()
    for name, center, spread in zip(p.columns, p.center, p.spread):
        if spread == 0:
            continue
        frame[name] = (frame[name].to_numpy(dtype=float) - center) / spread
    return t.with_frame(frame)


def fit_min_shift(X: np.ndarray) -> np.ndarray:
    """Per-column minimum of the training matrix."""
    X = np.asarray(X, dtype=float)
    if X.shape[0] == 0:
        return np.zeros(X.shape[1])
    return X.min(axis=0)


def apply_min_shift(X: np.ndarray, mins: np.ndarray) -> np.ndarray:
    """Shift so the training minimum sits at 0; values below it (unseen rows) clip to 0."""
    return np.clip(np.asarray(X, dtype=float) - mins, 0.0, None)

