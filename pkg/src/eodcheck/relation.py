"""Typed tabular data with missing values.

A relation is a rectangular table whose cells are either ``None`` (a missing
value), an exact decimal number, or a text string. Every column carries a
single kind, NUMBER or TEXT, so ordering within a column is always total:
numbers compare numerically, text compares lexicographically by code point
(which for UTF-8 equals byte order). Numbers are held as `decimal.Decimal`
rather than floats so that value ties are exact; tie detection is what
split/merge violation checks rest on.

Input is RFC-4180-style delimited text, UTF-8, with a configurable delimiter
and a configurable set of null tokens. A cell whose trimmed content equals
any null token becomes a missing value. Tuple ids are 0-based row positions
and are stable for the lifetime of the relation.

Relations and their missing-value indexes are immutable after construction
and safe to share across threads.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, DecimalException
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

from .errors import EmptyRelationError, ParseError, SchemaError

#: A cell value: missing, exact decimal number, or text.
Value = Union[None, Decimal, str]

#: An embedding is a set of attribute ids; it induces the complete
#: sub-relation of tuples with no missing value on any of its attributes.
Embedding = frozenset[int]

DEFAULT_NULL_TOKENS = frozenset({"", "?", "NULL", "⊥"})


class ColumnKind(Enum):
    NUMBER = "number"
    TEXT = "text"


def parse_number(cell: str) -> Decimal | None:
    """Parse a cell as an exact decimal number.

    Returns None when the cell is not a finite decimal (NaN and infinities
    are rejected so column order stays total).
    """
    try:
        value = Decimal(cell.strip())
    except DecimalException:
        return None
    return value if value.is_finite() else None


def infer_column_kinds(columns: Sequence[Iterable[str]]) -> list[ColumnKind]:
    """Assign a kind to each raw column.

    A column is NUMBER iff every non-null cell parses as a decimal number;
    otherwise TEXT. A column with no non-null cells is TEXT. ``columns`` must
    already have null cells stripped out.
    """
    kinds: list[ColumnKind] = []
    for column in columns:
        cells = list(column)
        if cells and all(parse_number(c) is not None for c in cells):
            kinds.append(ColumnKind.NUMBER)
        else:
            kinds.append(ColumnKind.TEXT)
    return kinds


@dataclass(frozen=True)
class Relation:
    """An immutable typed table.

    Rows are dense and rectangular; tuple ids are 0-based positions in
    ``rows``. Every non-null value in a column matches the column's kind.
    """

    attributes: tuple[str, ...]
    kinds: tuple[ColumnKind, ...]
    rows: tuple[tuple[Value, ...], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for name in self.attributes:
            if name in seen:
                raise SchemaError(f"duplicate attribute name {name!r}")
            seen.add(name)
        if len(self.kinds) != len(self.attributes):
            raise SchemaError("one kind per attribute required")
        width = len(self.attributes)
        for tid, row in enumerate(self.rows):
            if len(row) != width:
                raise SchemaError(f"row {tid} has {len(row)} values, expected {width}")
            for attr, value in enumerate(row):
                if value is None:
                    continue
                kind = self.kinds[attr]
                if kind is ColumnKind.NUMBER and not isinstance(value, Decimal):
                    raise SchemaError(
                        f"row {tid}, attribute {self.attributes[attr]!r}: "
                        f"expected a number, got {type(value).__name__}"
                    )
                if kind is ColumnKind.TEXT and not isinstance(value, str):
                    raise SchemaError(
                        f"row {tid}, attribute {self.attributes[attr]!r}: "
                        f"expected text, got {type(value).__name__}"
                    )

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def attribute_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise SchemaError(f"unknown attribute {name!r}") from None

    def attribute_indexes(self, names: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.attribute_index(n) for n in names)

    def value(self, tid: int, attr: int) -> Value:
        return self.rows[tid][attr]


def load_relation(
    source: str | bytes | IO[str],
    *,
    delimiter: str = ",",
    null_tokens: Iterable[str] = DEFAULT_NULL_TOKENS,
    header: bool = True,
) -> Relation:
    """Parse delimited text into a typed Relation.

    ``source`` may be the text itself, UTF-8 bytes, or a readable text file
    object. With ``header=True`` the first record names the attributes;
    without a header, attributes are named by 1-based column index ("1",
    "2", ...). Column kinds are inferred with `infer_column_kinds`. Cells
    whose trimmed content equals a null token load as missing values; all
    other text cells are kept verbatim. Blank records are skipped.

    Raises ParseError for ragged rows (naming the line), SchemaError for
    duplicate attribute names, and EmptyRelationError when no data rows
    remain.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8-sig")
    elif isinstance(source, str):
        text = source.lstrip("﻿")
    else:
        raw = source.read()
        text = raw.decode("utf-8-sig") if isinstance(raw, bytes) else raw

    tokens = frozenset(null_tokens)
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    records: list[tuple[int, list[str]]] = []
    for record in reader:
        if not record:
            continue  # blank line
        records.append((reader.line_num, record))

    if not records:
        raise EmptyRelationError("input contains no records")

    if header:
        names = tuple(cell.strip() for cell in records[0][1])
        data = records[1:]
    else:
        names = tuple(str(i + 1) for i in range(len(records[0][1])))
        data = records

    if not data:
        raise EmptyRelationError("input contains no data rows")

    width = len(names)
    cells: list[list[str | None]] = []
    for line_num, record in data:
        if len(record) != width:
            raise ParseError(
                f"line {line_num}: expected {width} fields, got {len(record)}"
            )
        cells.append([None if c.strip() in tokens else c for c in record])

    raw_columns = [
        [row[a] for row in cells if row[a] is not None] for a in range(width)
    ]
    kinds = infer_column_kinds(raw_columns)

    rows: list[tuple[Value, ...]] = []
    for raw_row in cells:
        row: list[Value] = []
        for attr, cell in enumerate(raw_row):
            if cell is None:
                row.append(None)
            elif kinds[attr] is ColumnKind.NUMBER:
                row.append(parse_number(cell))
            else:
                row.append(cell)
        rows.append(tuple(row))

    return Relation(attributes=names, kinds=tuple(kinds), rows=tuple(rows))


def load_relation_path(
    path: str | Path,
    *,
    delimiter: str = ",",
    null_tokens: Iterable[str] = DEFAULT_NULL_TOKENS,
    header: bool = True,
) -> Relation:
    """Load a relation from a file path (thin wrapper over `load_relation`)."""
    data = Path(path).read_bytes()
    return load_relation(
        data, delimiter=delimiter, null_tokens=null_tokens, header=header
    )


def dump_relation(
    relation: Relation, *, delimiter: str = ",", null_token: str = ""
) -> str:
    """Serialize a relation back to delimited text.

    Missing values are written as ``null_token``. Reloading the output with
    the same delimiter and a token set containing ``null_token`` yields an
    identical relation.
    """
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    writer.writerow(relation.attributes)
    for row in relation.rows:
        writer.writerow(
            [null_token if v is None else (str(v) if isinstance(v, Decimal) else v) for v in row]
        )
    return out.getvalue()


@dataclass(frozen=True)
class MissingIndex:
    """Per-attribute missing-value sets.

    ``missing[a]`` is the set of tuple ids whose value is missing on
    attribute ``a``; ``attributes_with_missing`` lists, in schema order, the
    attributes whose missing set is nonempty.
    """

    missing: tuple[frozenset[int], ...]
    attributes_with_missing: tuple[int, ...]


def build_missing_index(relation: Relation) -> MissingIndex:
    missing = tuple(
        frozenset(
            tid for tid, row in enumerate(relation.rows) if row[attr] is None
        )
        for attr in range(relation.n_attributes)
    )
    with_missing = tuple(a for a, ids in enumerate(missing) if ids)
    return MissingIndex(missing=missing, attributes_with_missing=with_missing)


def present_in(index: MissingIndex, embedding: Iterable[int], tid: int) -> bool:
    """True iff the tuple has no missing value on any attribute of the embedding."""
    return all(tid not in index.missing[attr] for attr in embedding)


def complete_tuple_ids(
    index: MissingIndex, embedding: Iterable[int], n_rows: int
) -> list[int]:
    """Tuple ids of the complete sub-relation induced by an embedding, ascending."""
    absent: set[int] = set()
    for attr in embedding:
        absent |= index.missing[attr]
    if not absent:
        return list(range(n_rows))
    return [tid for tid in range(n_rows) if tid not in absent]
