"""Outcome labelling: success is losing at least half of the excess weight over BMI 25."""
import numpy as np

IDEAL_BMI = 25.0
SUCCESS_FRACTION = 0.5


def label_success(height_m: float, initial_weight_kg: float, followup_weight_kg: float) -> int:
    """1 if (initial - followup) >= 0.5 * (initial - 25 * height^2), else 0."""
    if height_m <= 0:
        raise ValueError(f"height must be positive, got {height_m} m")
    if initial_weight_kg <= 0 or followup_weight_kg <= 0:
        raise ValueError("weights must be positive")
    ideal = IDEAL_BMI * height_m**2
    excess = initial_weight_kg - ideal
    if excess <= 0:
        raise ValueError(
            f"initial weight {initial_weight_kg} kg is not above the ideal weight {ideal:.2f} kg; "
            "excess weight loss is undefined"
        )
    loss = initial_weight_kg - followup_weight_kg
    return int(loss >= SUCCESS_FRACTION * excess)


def label_success_many(heights_m, initial_kg, followup_kg) -> np.ndarray:
    """Vectorised label_success over equal-length arrays."""
    heights = np.asarray(heights_m, dtype=float)
    initial = np.asarray(initial_kg, dtype=float)
    followup = np.asarray(followup_kg, dtype=float)
    if not (heights.shape == initial.shape == followup.shape):
        raise ValueError("height and weight arrays must have the same shape")
    if (heights <= 0).any() or (initial <= 0).any() or (followup <= 0).any():
        raise ValueError("heights and weights must be positive")
    excess = initial - IDEAL_BMI * heights**2
    if (excess <= 0).any():
        bad = int(np.flatnonzero(excess <= 0)[0])
        raise ValueError(f"row {bad}: initial weight is not above the ideal weight")
    return ((initial - followup) >= SUCCESS_FRACTION * excess).astype(int)
