"""Central registry: register classifier families, fit by name, predict through one contract."""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from src.classifiers.base import FamilySpec, check_fit_inputs, check_width

_registry: dict[str, FamilySpec] = {}


def register_family(spec: FamilySpec) -> None:
    """Register a family under spec.name. Re-registering replaces the previous entry."""
    _registry[spec.name] = spec


def get_family(name: str) -> FamilySpec:
    try:
        return _registry[name]
    except KeyError:
        raise ValueError(f"unknown classifier family '{name}'; registered: {family_names()}") from None


def family_names() -> list[str]:
    return list(_registry)


@dataclass(frozen=True)
class ClassifierModel:
    """A fitted classifier of any family. Immutable; safe to share across threads."""

    family: str
    state: Any
    classes: tuple[int, ...]
    n_features: int
    params: dict[str, Any]

    def predict(self, X) -> np.ndarray:
        X = check_width(X, self.n_features)
        return np.asarray(get_family(self.family).predict(self.state, X))

    def predict_one(self, x) -> int:
        return int(self.predict(np.asarray(x, dtype=float)[None, :])[0])

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "classes": [int(c) for c in self.classes],
            "n_features": self.n_features,
            "params": self.params,
            "state": get_family(self.family).describe(self.state),
        }


def fit_model(family: str, X, y, **params: Any) -> ClassifierModel:
    """Fit a registered family. Unknown parameters raise TypeError from the family's fit."""
    spec = get_family(family)
    X, y = check_fit_inputs(X, y)
    merged = {**spec.defaults, **params}
    state = spec.fit(X, y, **merged)
    return ClassifierModel(
        family=family,
        state=state,
        classes=tuple(int(c) for c in np.unique(y)),
        n_features=X.shape[1],
        params=merged,
    )


def dump_model(model: ClassifierModel, path: str | Path) -> None:
    """Write the fitted state as indented JSON for inspection."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(model.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
