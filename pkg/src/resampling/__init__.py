"""Class-balance correction applied to training rows only."""
from src.resampling.oversample import (
    ResampleMethod,
    ResamplePlan,
    minority_neighbours,
    random_oversample,
    resample,
    smote,
)

__all__ = ["ResampleMethod", "ResamplePlan", "minority_neighbours", "random_oversample", "resample", "smote"]
