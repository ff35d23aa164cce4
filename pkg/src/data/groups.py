"""The eight variable groups: which column categories each one feeds to the classifiers."""
from dataclasses import dataclass
from typing import Sequence

from src.data.schema import ColumnSpec, Table

PSYCHOMETRIC = frozenset(
    {"psychometric_eq5", "psychometric_salamanca", "psychometric_acta", "psychometric_other"}
)


@dataclass(frozen=True)
class GroupSpec:
    id: str
    description: str
    included_categories: frozenset[str]


def _build_groups() -> dict[str, GroupSpec]:
    base = {
        "I": GroupSpec("I", "Socio-economic", frozenset({"socioeconomic"})),
        "II": GroupSpec("II", "Psychometric", PSYCHOMETRIC),
        "III": GroupSpec("III", "Analytical", frozenset({"analytical"})),
        "IV": GroupSpec("IV", "EuroQol.5", frozenset({"psychometric_eq5"})),
        "V": GroupSpec("V", "Salamanca screening", frozenset({"psychometric_salamanca"})),
        "VI": GroupSpec("VI", "ACTA", frozenset({"psychometric_acta"})),
    }
    # Unions are built from the base groups so VII and VIII cannot drift from I-III
    base["VII"] = GroupSpec(
        "VII",
        "All variables",
        base["I"].included_categories | base["II"].included_categories | base["III"].included_categories,
    )
    base["VIII"] = GroupSpec(
        "VIII",
        "Socio-economic + Psychometric",
        base["I"].included_categories | base["II"].included_categories,
    )
    return base


GROUPS: dict[str, GroupSpec] = _build_groups()
GROUP_IDS: tuple[str, ...] = tuple(GROUPS)


def get_group(group_id: str) -> GroupSpec:
    try:
        return GROUPS[group_id]
    except KeyError:
        raise ValueError(f"unknown group '{group_id}'; valid groups: {', '.join(GROUP_IDS)}") from None


def group_columns(schema: Sequence[ColumnSpec], g: GroupSpec) -> list[str]:
    """Feature column names of the group, in schema order."""
    return [c.name for c in schema if c.category in g.included_categories]


def select_group(t: Table, g: GroupSpec) -> Table:
    """Keep the group's feature columns plus the outcome, preserving column order."""
    features = set(group_columns(t.schema, g))
    if not features:
        raise ValueError(f"group {g.id} ({g.description}) selects no feature columns from this table")
    keep = [c for c in t.schema if c.name in features or c.category == "outcome"]
    return t.with_frame(t.frame[[c.name for c in keep]].copy(), schema=keep)
