"""Per-group mean and population standard deviation over a classifiers x groups matrix."""
from dataclasses import dataclass

import numpy as np
import pandas as pd


@dataclass(frozen=True)
class GroupStat:
    group: str
    mean: float
    sd: float
    n: int


def aggregate_group_stats(matrix: pd.DataFrame, allow_missing: bool = False) -> list[GroupStat]:
    """Column mean and population SD (divide by N) for every group column.

    matrix has one row per classifier and one column per group; failed cells are NaN.
    Missing cells are an error unless allow_missing, which aggregates the defined ones.
    """
    stats = []
    for group in matrix.columns:
        values = pd.to_numeric(matrix[group], errors="coerce").to_numpy(dtype=float)
        missing = np.isnan(values)
        if missing.any() and not allow_missing:
            rows = [str(r) for r in matrix.index[missing]]
            raise ValueError(f"group {group} has missing cells for {rows}")
        values = values[~missing]
        if values.size == 0:
            raise ValueError(f"group {group} has no values to aggregate")
        stats.append(GroupStat(str(group), float(values.mean()), float(values.std(ddof=0)), int(values.size)))
    return stats
