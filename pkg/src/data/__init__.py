"""Dataset schema, ingestion, encoding/scaling, outcome labels, variable groups and synthetic data."""
from src.data.encoding import (
    EncodingMap,
    ScalerParams,
    apply_encoding,
    apply_min_shift,
    apply_scaler,
    decode_categoricals,
    encode_categoricals,
    fit_min_shift,
    fit_scaler,
)
from src.data.groups import GROUP_IDS, GROUPS, GroupSpec, get_group, group_columns, select_group
from src.data.outcome import label_success, label_success_many
from src.data.schema import ColumnSpec, Table, load_schema, load_table, make_table, write_schema
from src.data.synthetic import SyntheticSpec, generate_from_spec, generate_synthetic, planted_columns, planted_directions

__all__ = [
    "ColumnSpec",
    "EncodingMap",
    "GROUPS",
    "GROUP_IDS",
    "GroupSpec",
    "ScalerParams",
    "SyntheticSpec",
    "Table",
    "apply_encoding",
    "apply_min_shift",
    "apply_scaler",
    "decode_categoricals",
    "encode_categoricals",
    "fit_min_shift",
    "fit_scaler",
    "generate_from_spec",
    "generate_synthetic",
    "get_group",
    "group_columns",
    "label_success",
    "label_success_many",
    "load_schema",
    "load_table",
    "make_table",
    "planted_columns",
    "planted_directions",
    "select_group",
    "write_schema",
]
