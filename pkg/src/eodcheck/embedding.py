"""Embedding-repair validation pipeline.

`validate_eod` answers, for a statement with embedding E: does the
dependency hold on the complete sub-relation r^E, and if not, is there a
strictly larger embedding E' on which it holds? Growing the embedding can
only remove tuples (those with missing values on the added attributes), so
the search works directly on the violating pairs: a pair disappears exactly
when one endpoint has a missing value on an added attribute. A pair whose
endpoints are complete on every attribute can never be removed, which makes
a "not valid" answer exact.

Because detection reports witnesses rather than every violating pair,
validation loops: detect violations on r^E', grow E' until all detected
pairs are gone, re-detect, and repeat until a detection pass comes back
clean. Each pass strictly grows the embedding, so the number of passes is
bounded by the number of attributes outside E.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .order import PairKind, Statement, ViolationPair, find_errors
from .relation import (
    Embedding,
    MissingIndex,
    Relation,
    build_missing_index,
    complete_tuple_ids,
    present_in,
)


class Verdict(Enum):
    VALID = "valid"
    VALID_WITH = "valid_with"
    NOT_VALID = "not_valid"


@dataclass(frozen=True)
class Diagnostics:
    """Bookkeeping from one validation run.

    ``swaps`` and ``merges`` are the witnesses of the first detection pass,
    in sorted order. ``ignored`` counts tuples of r^E dropped by the final
    (or last attempted) embedding, ``iterations`` the number of detection
    passes.
    """

    swaps: tuple[ViolationPair, ...]
    merges: tuple[ViolationPair, ...]
    ignored: int
    iterations: int
    elapsed_s: float

    @property
    def swap_count(self) -> int:
        return len(self.swaps)

    @property
    def merge_count(self) -> int:
        return len(self.merges)


@dataclass(frozen=True)
class ValidationOutcome:
    """Verdict plus evidence: the grown embedding for VALID_WITH, an
    unremovable witness pair for NOT_VALID."""

    verdict: Verdict
    embedding: Embedding | None
    witness: ViolationPair | None
    diagnostics: Diagnostics

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.NOT_VALID


def check_error_deletion(
    pairs: Iterable[ViolationPair], embedding: Embedding, index: MissingIndex
) -> set[ViolationPair]:
    """Pairs that survive on r^embedding.

    A pair is deleted iff at least one endpoint has a missing value on some
    attribute of the embedding.
    """
    return {
        p
        for p in pairs
        if present_in(index, embedding, p.s) and present_in(index, embedding, p.t)
    }


def update_embedding(
    embedding: Embedding,
    swaps: Iterable[ViolationPair],
    merges: Iterable[ViolationPair],
    missing_attrs: Iterable[int],
    index: MissingIndex,
) -> tuple[Embedding | None, ViolationPair | None]:
    """Grow the embedding until every given pair is deleted.

    Processes swaps first, then merges, each in sorted pair order. A pair
    already deleted under the embedding grown so far is skipped. For a
    surviving pair, attributes with missing values are scanned in schema
    order and the first one that deletes the pair (an endpoint is missing
    on it) is added. If no attribute deletes a pair, that pair is returned
    as an unremovable witness.

    Returns ``(grown_embedding, None)`` on success or ``(None, witness)``.
    """
    grown = set(embedding)
    ordered_attrs = tuple(missing_attrs)
    for pair in sorted(swaps, key=ViolationPair.sort_key) + sorted(
        merges, key=ViolationPair.sort_key
    ):
        if not (
            present_in(index, grown, pair.s) and present_in(index, grown, pair.t)
        ):
            continue  # removed by an attribute added for an earlier pair
        removed = False
        for attr in ordered_attrs:
            if pair.s in index.missing[attr] or pair.t in index.missing[attr]:
                grown.add(attr)
                removed = True
                break
        if not removed:
            return None, pair
    return frozenset(grown), None


def validate_eod(relation: Relation, stmt: Statement) -> ValidationOutcome:
    """Validate a statement, growing its embedding when needed.

    Returns VALID when the statement already holds on r^E, VALID_WITH and
    the grown embedding E' > E when it holds after growth, and NOT_VALID
    with an unremovable witness pair otherwise. A VALID_WITH embedding is
    guaranteed clean: the final detection pass on r^E' found no violations.

    Raises SchemaError when the statement references attributes outside the
    relation's schema.
    """
    start = time.perf_counter()
    stmt.check_against(relation)
    index = build_missing_index(relation)
    base_size = len(complete_tuple_ids(index, stmt.embedding, relation.n_rows))

    if stmt.lhs == stmt.rhs:  # identity statements hold trivially
        diag = Diagnostics((), (), 0, 0, time.perf_counter() - start)
        return ValidationOutcome(Verdict.VALID, None, None, diag)

    grown: Embedding = stmt.embedding
    first_swaps: tuple[ViolationPair, ...] | None = None
    first_merges: tuple[ViolationPair, ...] = ()
    iterations = 0

    while True:
        iterations += 1
        universe = complete_tuple_ids(index, grown, relation.n_rows)
        swaps, merges = find_errors(relation, stmt, universe)
        if first_swaps is None:
            first_swaps = tuple(sorted(swaps, key=ViolationPair.sort_key))
            first_merges = tuple(sorted(merges, key=ViolationPair.sort_key))

        if not swaps and not merges:
            diag = Diagnostics(
                first_swaps,
                first_merges,
                base_size - len(universe),
                iterations,
                time.perf_counter() - start,
            )
            if grown == stmt.embedding:
                return ValidationOutcome(Verdict.VALID, None, None, diag)
            return ValidationOutcome(Verdict.VALID_WITH, grown, None, diag)

        surviving = check_error_deletion(swaps | merges, grown, index)
        surviving_swaps = {p for p in surviving if p.kind is PairKind.SWAP}
        surviving_merges = {p for p in surviving if p.kind is PairKind.MERGE}
        new_embedding, witness = update_embedding(
            grown,
            surviving_swaps,
            surviving_merges,
            index.attributes_with_missing,
            index,
        )
        if witness is not None:
            diag = Diagnostics(
                first_swaps,
                first_merges,
                base_size - len(universe),
                iterations,
                time.perf_counter() - start,
            )
            return ValidationOutcome(Verdict.NOT_VALID, None, witness, diag)
        grown = new_embedding
