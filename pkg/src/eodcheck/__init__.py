"""Order dependency validation over tables with missing values.

The library checks statements of the form "ordering by X also orders Y" on
the complete part of a table (tuples with no missing values on an embedding
of attributes), and when a statement fails, searches for a larger embedding
under which it holds. Exhaustive oracles, a greedy set-cover baseline, a
hardness-instance generator, and a benchmark harness accompany the
validator.
"""

from .bench import (
    Algorithm,
    Side,
    SizeAggregate,
    SweepConfig,
    SweepRow,
    aggregate_rows,
    gen_synthetic,
    rank_correlation,
    rows_to_csv,
    rows_to_records,
    run_sweep,
)
from .embedding import (
    Diagnostics,
    ValidationOutcome,
    Verdict,
    check_error_deletion,
    update_embedding,
    validate_eod,
)
from .errors import (
    CapExceededError,
    ConfigError,
    EmptyRelationError,
    EodCheckError,
    IncompleteTupleError,
    OracleTimeoutError,
    ParseError,
    SchemaError,
)
from .oracle import (
    CoverInstance,
    build_cover_instance,
    gen_hardness_instance,
    greedy_min_ignored,
    min_ignored_embedding,
    naive_validate,
)
from .order import (
    Operator,
    PairKind,
    SortedPartition,
    Statement,
    ViolationPair,
    build_sorted_partition,
    check_valid,
    compare_lists,
    find_errors,
)
from .relation import (
    DEFAULT_NULL_TOKENS,
    ColumnKind,
    Embedding,
    MissingIndex,
    Relation,
    Value,
    build_missing_index,
    complete_tuple_ids,
    dump_relation,
    infer_column_kinds,
    load_relation,
    load_relation_path,
    parse_number,
    present_in,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "CapExceededError",
    "ColumnKind",
    "ConfigError",
    "CoverInstance",
    "DEFAULT_NULL_TOKENS",
    "Diagnostics",
    "Embedding",
    "EmptyRelationError",
    "EodCheckError",
    "IncompleteTupleError",
    "MissingIndex",
    "Operator",
    "OracleTimeoutError",
    "PairKind",
    "ParseError",
    "Relation",
    "SchemaError",
    "Side",
    "SizeAggregate",
    "SortedPartition",
    "Statement",
    "SweepConfig",
    "SweepRow",
    "ValidationOutcome",
    "Value",
    "Verdict",
    "ViolationPair",
    "aggregate_rows",
    "build_cover_instance",
    "build_missing_index",
    "build_sorted_partition",
    "check_error_deletion",
    "check_valid",
    "compare_lists",
    "complete_tuple_ids",
    "dump_relation",
    "find_errors",
    "gen_hardness_instance",
    "gen_synthetic",
    "greedy_min_ignored",
    "infer_column_kinds",
    "load_relation",
    "load_relation_path",
    "min_ignored_embedding",
    "naive_validate",
    "parse_number",
    "present_in",
    "rank_correlation",
    "rows_to_csv",
    "rows_to_records",
    "run_sweep",
    "update_embedding",
    "validate_eod",
]
