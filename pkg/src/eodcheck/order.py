"""List-valued comparisons, sorted partitions, and violation detection.

An order dependency statement ``X -> Y`` (operator ``<=`` or ``<``) asks that
ordering tuples by the attribute list X also orders them by Y. List values
compare lexicographically in list order. A statement fails on a pair of
tuples in one of two ways:

* swap: X strictly increases while Y strictly decreases (breaks both
  operators);
* under ``<=``, a pair with equal X but different Y (a split of Y within an
  X-group); under ``<``, a pair with different X but equal Y (a merge of X
  onto one Y value).

`find_errors` detects witnesses for these patterns in one pass over the
sorted partition of the search universe on X. It reports at least one
witness per violation front but not necessarily every violating pair; the
validator in `eodcheck.embedding` re-runs detection to a fixpoint, so
emptiness of the result is exactly equivalent to validity.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import IncompleteTupleError, SchemaError
from .relation import Embedding, Relation, Value


class Operator(Enum):
    """Comparison flavor of a statement: non-strict or strict order."""

    LEQ = "leq"
    LT = "lt"

    @property
    def symbol(self) -> str:
        return "<=" if self is Operator.LEQ else "<"


class PairKind(Enum):
    SWAP = "swap"
    MERGE = "merge"


@dataclass(frozen=True)
class ViolationPair:
    """A witness pair of tuple ids, normalized so that s < t."""

    s: int
    t: int
    kind: PairKind

    def __post_init__(self) -> None:
        if self.s == self.t:
            raise ValueError("a violation pair needs two distinct tuples")
        if self.s > self.t:
            low, high = self.t, self.s
            object.__setattr__(self, "s", low)
            object.__setattr__(self, "t", high)

    def sort_key(self) -> tuple[int, int, str]:
        return (self.s, self.t, self.kind.value)

    def ids(self) -> tuple[int, int]:
        return (self.s, self.t)


@dataclass(frozen=True)
class Statement:
    """An order dependency statement with an embedding.

    ``lhs`` and ``rhs`` are nonempty, duplicate-free attribute-id lists. The
    embedding always contains every statement attribute; when omitted it
    defaults to exactly ``lhs | rhs``. The two sides may share attributes
    only when they are identical lists (such identity statements are
    trivially valid).
    """

    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    operator: Operator = Operator.LEQ
    embedding: Embedding | None = None

    def __post_init__(self) -> None:
        lhs = tuple(self.lhs)
        rhs = tuple(self.rhs)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        if not lhs or not rhs:
            raise SchemaError("statement sides must be nonempty attribute lists")
        if len(set(lhs)) != len(lhs) or len(set(rhs)) != len(rhs):
            raise SchemaError("statement sides must not repeat attributes")
        if set(lhs) & set(rhs) and lhs != rhs:
            raise SchemaError(
                "statement sides may share attributes only when identical"
            )
        required = frozenset(lhs) | frozenset(rhs)
        if self.embedding is None:
            object.__setattr__(self, "embedding", required)
        else:
            emb = frozenset(self.embedding)
            if not required <= emb:
                raise SchemaError("embedding must contain every statement attribute")
            object.__setattr__(self, "embedding", emb)

    @classmethod
    def from_names(
        cls,
        relation: Relation,
        lhs: Iterable[str],
        rhs: Iterable[str],
        operator: Operator = Operator.LEQ,
        embedding: Iterable[str] | None = None,
    ) -> "Statement":
        emb = (
            frozenset(relation.attribute_indexes(embedding))
            if embedding is not None
            else None
        )
        return cls(
            lhs=relation.attribute_indexes(lhs),
            rhs=relation.attribute_indexes(rhs),
            operator=operator,
            embedding=emb,
        )

    def check_against(self, relation: Relation) -> None:
        """Raise SchemaError if any referenced attribute id is out of range."""
        for attr in self.embedding:  # embedding covers lhs and rhs
            if not 0 <= attr < relation.n_attributes:
                raise SchemaError(f"attribute id {attr} outside schema")


def _tuple_key(relation: Relation, tid: int, attrs: tuple[int, ...]) -> tuple[Value, ...]:
    row = relation.rows[tid]
    key = []
    for attr in attrs:
        value = row[attr]
        if value is None:
            raise IncompleteTupleError(
                f"tuple {tid} is missing a value on attribute "
                f"{relation.attributes[attr]!r}; restrict to complete tuples first"
            )
        key.append(value)
    return tuple(key)


def compare_lists(
    relation: Relation, s: int, t: int, attrs: tuple[int, ...]
) -> int:
    """Lexicographic comparison of two tuples on an attribute list.

    Returns -1, 0, or 1. Raises IncompleteTupleError if either tuple has a
    missing value on the list.
    """
    ks = _tuple_key(relation, s, attrs)
    kt = _tuple_key(relation, t, attrs)
    return (ks > kt) - (ks < kt)


@dataclass(frozen=True)
class PartitionClass:
    key: tuple[Value, ...]
    members: frozenset[int]


@dataclass(frozen=True)
class SortedPartition:
    """Equivalence classes of tuples by key on an attribute list, ascending by key."""

    attrs: tuple[int, ...]
    classes: tuple[PartitionClass, ...]


def build_sorted_partition(
    relation: Relation, attrs: tuple[int, ...], universe: Iterable[int]
) -> SortedPartition:
    """Group the universe by key on ``attrs`` and order the groups by key.

    Every tuple in the universe must be complete on ``attrs``.
    """
    groups: dict[tuple[Value, ...], set[int]] = {}
    for tid in universe:
        groups.setdefault(_tuple_key(relation, tid, attrs), set()).add(tid)
    classes = tuple(
        PartitionClass(key=key, members=frozenset(groups[key]))
        for key in sorted(groups)
    )
    return SortedPartition(attrs=tuple(attrs), classes=classes)


def find_errors(
    relation: Relation, stmt: Statement, universe: Iterable[int]
) -> tuple[set[ViolationPair], set[ViolationPair]]:
    """Detect swap and merge witnesses for a statement on a universe of tuples.

    The universe must be complete on ``lhs | rhs``. Returns ``(swaps,
    merges)``. Swaps pair a tuple whose rhs value drops below the running
    maximum of all strictly smaller lhs keys with the tuple holding that
    maximum. Merges are, under ``<=``, pairs of distinct rhs values inside a
    single lhs class (splits), and under ``<``, recurrences of one rhs value
    across distinct lhs classes. The result is empty iff the statement holds
    on the universe; when nonempty it carries at least one witness per
    violation front, not necessarily every violating pair.

    Runs in one sort plus one linear scan; at most one swap is emitted per
    tuple and at most one merge per distinct rhs value per class, so
    ``|swaps| + |merges| <= 2 * |universe|``.
    """
    stmt.check_against(relation)
    partition = build_sorted_partition(relation, stmt.lhs, universe)
    swaps: set[ViolationPair] = set()
    merges: set[ViolationPair] = set()

    best_key: tuple[Value, ...] | None = None  # max rhs key over earlier classes
    best_rep = -1
    last_seen: dict[tuple[Value, ...], tuple[int, int]] = {}  # rhs key -> (class, rep)

    for class_index, cls in enumerate(partition.classes):
        members = sorted(cls.members)
        rhs_keys = {tid: _tuple_key(relation, tid, stmt.rhs) for tid in members}

        for tid in members:
            if best_key is not None and rhs_keys[tid] < best_key:
                swaps.add(ViolationPair(best_rep, tid, PairKind.SWAP))

        if stmt.operator is Operator.LEQ:
            first_key: tuple[Value, ...] | None = None
            first_rep = -1
            reported: set[tuple[Value, ...]] = set()
            for tid in members:
                key = rhs_keys[tid]
                if first_key is None:
                    first_key, first_rep = key, tid
                elif key != first_key and key not in reported:
                    merges.add(ViolationPair(first_rep, tid, PairKind.MERGE))
                    reported.add(key)
        else:
            class_reps: dict[tuple[Value, ...], int] = {}
            for tid in members:
                class_reps.setdefault(rhs_keys[tid], tid)
            for key, rep in class_reps.items():
                previous = last_seen.get(key)
                if previous is not None and previous[0] != class_index:
                    merges.add(ViolationPair(previous[1], rep, PairKind.MERGE))
                last_seen[key] = (class_index, rep)

        for tid in members:
            if best_key is None or rhs_keys[tid] > best_key:
                best_key, best_rep = rhs_keys[tid], tid

    return swaps, merges


def check_valid(
    relation: Relation, stmt: Statement, universe: Iterable[int]
) -> bool:
    """True iff no violating pair exists on the universe."""
    swaps, merges = find_errors(relation, stmt, universe)
    return not swaps and not merges
