"""The nine classifier variants of the experiment matrix and their default search grids."""
from dataclasses import dataclass
from typing import Any

from src.resampling import ResampleMethod

# Search grids for the "improved" variants, keyed by classifier family
DEFAULT_GRIDS: dict[str, dict[str, list[Any]]] = {
    "knn": {"k": [1, 3, 5, 7, 9, 11], "vote": ["uniform"]},
    "decision_tree": {
        "criterion": ["entropy", "gini"],
        "max_depth": [2, 3, 4, 6, None],
        "min_samples_leaf": [1, 2, 4],
    },
}


@dataclass(frozen=True)
class VariantSpec:
    """A named matrix row: classifier family, whether it grid-searches, optional resampler."""

    name: str
    family: str
    description: str
    search: bool = False
    resampler: ResampleMethod | None = None


_variants: dict[str, VariantSpec] = {}
_aliases: dict[str, str] = {}


def register_variant(spec: VariantSpec, aliases: tuple[str, ...] = ()) -> None:
    _variants[spec.name] = spec
    for alias in aliases:
        _aliases[alias] = spec.name


def variant_names() -> list[str]:
    """Canonical names in matrix row order."""
    return list(_variants)


def resolve_variant(name: str) -> VariantSpec:
    """Look up a variant by name or alias (e.g. "LogisticRegression" for "LR")."""
    canonical = _aliases.get(name, name)
    try:
        return _variants[canonical]
    except KeyError:
        raise ValueError(f"unknown classifier '{name}'; valid: {', '.join(_variants)}") from None


def default_grid(family: str) -> dict[str, list[Any]]:
    try:
        return {k: list(v) for k, v in DEFAULT_GRIDS[family].items()}
    except KeyError:
        raise ValueError(f"no default search grid for family '{family}'") from None


register_variant(VariantSpec("LR", "logistic", "Logistic regression"), aliases=("LogisticRegression",))
register_variant(VariantSpec("GaussianNB", "gaussian_nb", "Gaussian Naive Bayes"))
register_variant(VariantSpec("ComplementNB", "complement_nb", "Complement Naive Bayes"))
register_variant(VariantSpec("KNN", "knn", "k-nearest neighbours"))
register_variant(VariantSpec("DT", "decision_tree", "Decision tree"))
register_variant(VariantSpec("KNN improved", "knn", "KNN with optimized hyperparameters", search=True))
register_variant(VariantSpec("DT improved", "decision_tree", "DT with optimized hyperparameters", search=True))
register_variant(
    VariantSpec(
        "KNN imp.randover",
        "knn",
        "KNN with optimized hyperparameters and random oversampling",
        search=True,
        resampler="random_over",
    )
)
register_variant(
    VariantSpec(
        "KNN imp.SMOTE",
        "knn",
        "KNN with optimized hyperparameters and SMOTE",
        search=True,
        resampler="smote",
    )
)

VARIANT_NAMES: tuple[str, ...] = tuple(variant_names())
