"""Ground-truth machinery for testing and comparison.

`naive_validate` and `min_ignored_embedding` enumerate candidate embeddings
exhaustively; they are exact but exponential in the number of attributes
outside the statement's embedding, so both refuse to run past a configurable
cap instead of silently truncating. `greedy_min_ignored` is the polynomial
baseline: it treats the violating pairs as a set-cover universe where each
attribute with missing values covers the pairs it can delete, at a weight of
the tuples it newly ignores.

`gen_hardness_instance` builds the family of relations on which minimizing
ignored tuples is exactly weighted set cover: lhs values 1..n, rhs values
repeating in adjacent pairs so that each pair of tuples (2j-1, 2j) merges
under the strict operator, with missing values placed per a caller-supplied
plan of at most one per tuple.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .embedding import Diagnostics, ValidationOutcome, Verdict
from .errors import CapExceededError, ConfigError, OracleTimeoutError
from .order import Statement, ViolationPair, find_errors
from .relation import (
    ColumnKind,
    Embedding,
    MissingIndex,
    Relation,
    build_missing_index,
    complete_tuple_ids,
)

DEFAULT_FREE_ATTRIBUTE_CAP = 20


def _check_cap(relation: Relation, stmt: Statement, cap: int) -> None:
    free = relation.n_attributes - len(stmt.embedding)
    if free > cap:
        raise CapExceededError(
            f"{free} attributes outside the embedding exceed the search cap "
            f"of {cap}; raise the cap explicitly to run anyway"
        )


def _candidate_embeddings(
    relation: Relation, base: Embedding
) -> Iterator[Embedding]:
    """All embeddings containing ``base``, by increasing size, ties broken
    lexicographically on the sorted attribute-id tuple. Yields ``base`` first."""
    free = sorted(set(range(relation.n_attributes)) - base)
    for size in range(len(free) + 1):
        level = sorted(
            tuple(sorted(base | set(combo))) for combo in combinations(free, size)
        )
        for attrs in level:
            yield frozenset(attrs)


def naive_validate(
    relation: Relation,
    stmt: Statement,
    *,
    cap: int = DEFAULT_FREE_ATTRIBUTE_CAP,
    timeout_s: float | None = None,
) -> ValidationOutcome:
    """Exact validation by exhaustive embedding enumeration.

    Checks the statement on r^E' for every candidate E' containing the
    statement's embedding, smallest candidates first, and returns the first
    one that passes. Exponential in the free-attribute count; refuses with
    CapExceededError past ``cap`` and raises OracleTimeoutError when
    ``timeout_s`` elapses between candidates.
    """
    start = time.perf_counter()
    stmt.check_against(relation)
    _check_cap(relation, stmt, cap)
    index = build_missing_index(relation)
    base_size = len(complete_tuple_ids(index, stmt.embedding, relation.n_rows))

    first_swaps: tuple[ViolationPair, ...] | None = None
    first_merges: tuple[ViolationPair, ...] = ()
    checked = 0
    for candidate in _candidate_embeddings(relation, stmt.embedding):
        if timeout_s is not None and time.perf_counter() - start > timeout_s:
            raise OracleTimeoutError(
                f"exhaustive validation exceeded {timeout_s} s after "
                f"{checked} candidate embeddings"
            )
        checked += 1
        universe = complete_tuple_ids(index, candidate, relation.n_rows)
        swaps, merges = find_errors(relation, stmt, universe)
        if first_swaps is None:
            first_swaps = tuple(sorted(swaps, key=ViolationPair.sort_key))
            first_merges = tuple(sorted(merges, key=ViolationPair.sort_key))
        if not swaps and not merges:
            diag = Diagnostics(
                first_swaps,
                first_merges,
                base_size - len(universe),
                checked,
                time.perf_counter() - start,
            )
            if candidate == stmt.embedding:
                return ValidationOutcome(Verdict.VALID, None, None, diag)
            return ValidationOutcome(Verdict.VALID_WITH, candidate, None, diag)

    # No embedding works, so the fully complete sub-relation still violates;
    # any pair found there is complete everywhere and therefore unremovable.
    full = frozenset(range(relation.n_attributes))
    universe = complete_tuple_ids(index, full, relation.n_rows)
    swaps, merges = find_errors(relation, stmt, universe)
    witness = min(swaps | merges, key=ViolationPair.sort_key)
    diag = Diagnostics(
        first_swaps or (),
        first_merges,
        0,
        checked,
        time.perf_counter() - start,
    )
    return ValidationOutcome(Verdict.NOT_VALID, None, witness, diag)


def min_ignored_embedding(
    relation: Relation,
    stmt: Statement,
    *,
    cap: int = DEFAULT_FREE_ATTRIBUTE_CAP,
) -> tuple[Embedding, int] | None:
    """Exact minimum-ignored-tuples search over all embeddings containing E.

    Returns ``(embedding, ignored)`` minimizing the number of tuples of r^E
    dropped, with ties broken by smaller embedding then lexicographic order,
    or None when no embedding makes the statement hold. Exponential; refuses
    past ``cap`` free attributes.
    """
    stmt.check_against(relation)
    _check_cap(relation, stmt, cap)
    index = build_missing_index(relation)
    base_size = len(complete_tuple_ids(index, stmt.embedding, relation.n_rows))

    best: tuple[int, int, tuple[int, ...]] | None = None
    for candidate in _candidate_embeddings(relation, stmt.embedding):
        universe = complete_tuple_ids(index, candidate, relation.n_rows)
        swaps, merges = find_errors(relation, stmt, universe)
        if swaps or merges:
            continue
        key = (base_size - len(universe), len(candidate), tuple(sorted(candidate)))
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return frozenset(best[2]), best[0]


@dataclass(frozen=True)
class CoverInstance:
    """Violating pairs as a set-cover universe.

    For each attribute with missing values: ``subsets[a]`` is the set of
    pairs deleted if ``a`` joins the embedding (an endpoint is missing on
    ``a``), and ``weights[a]`` counts the tuples of the current complete
    sub-relation newly ignored by adding ``a``.
    """

    pairs: frozenset[ViolationPair]
    subsets: Mapping[int, frozenset[ViolationPair]]
    weights: Mapping[int, int]


def build_cover_instance(
    index: MissingIndex,
    pairs: Iterable[ViolationPair],
    embedding: Embedding,
    n_rows: int,
) -> CoverInstance:
    pair_set = frozenset(pairs)
    present = set(complete_tuple_ids(index, embedding, n_rows))
    subsets: dict[int, frozenset[ViolationPair]] = {}
    weights: dict[int, int] = {}
    for attr in index.attributes_with_missing:
        missing = index.missing[attr]
        subsets[attr] = frozenset(
            p for p in pair_set if p.s in missing or p.t in missing
        )
        weights[attr] = sum(1 for tid in missing if tid in present)
    return CoverInstance(pairs=pair_set, subsets=subsets, weights=weights)


def greedy_min_ignored(
    relation: Relation, stmt: Statement
) -> tuple[Embedding, int] | None:
    """Greedy weighted-set-cover baseline for the minimum-ignored search.

    Repeatedly adds the attribute with the best weight-per-newly-covered-pair
    ratio, recomputing weights against the embedding grown so far (adding an
    attribute shrinks the sub-relation, so weights are not static). Once all
    detected pairs are covered, detection reruns; the loop ends when a pass
    is clean. Returns None when some violating pair has no covering
    attribute, which means no embedding at all can repair the statement.
    """
    stmt.check_against(relation)
    index = build_missing_index(relation)
    base_ids = complete_tuple_ids(index, stmt.embedding, relation.n_rows)

    grown: set[int] = set(stmt.embedding)
    while True:
        universe = complete_tuple_ids(index, grown, relation.n_rows)
        swaps, merges = find_errors(relation, stmt, universe)
        pending = swaps | merges
        if not pending:
            return frozenset(grown), len(base_ids) - len(universe)

        cover = build_cover_instance(index, pending, frozenset(grown), relation.n_rows)
        present = set(universe)
        uncovered = set(pending)
        while uncovered:
            best_key: tuple[Fraction, int, int] | None = None
            best_attr = -1
            for attr in index.attributes_with_missing:
                if attr in grown:
                    continue
                covered = uncovered & cover.subsets[attr]
                if not covered:
                    continue
                weight = sum(1 for tid in index.missing[attr] if tid in present)
                key = (Fraction(weight, len(covered)), -len(covered), attr)
                if best_key is None or key < best_key:
                    best_key, best_attr = key, attr
            if best_key is None:
                return None  # an uncovered pair is unremovable
            grown.add(best_attr)
            present -= index.missing[best_attr]
            uncovered -= cover.subsets[best_attr]


def gen_hardness_instance(
    n: int, null_plan: Mapping[str, Iterable[int]] | None = None
) -> Relation:
    """Build a relation whose repair search is a weighted set-cover instance.

    Columns are ``X`` (values 1..n) and ``Y`` (values repeating in adjacent
    pairs: 1,1,2,2,...), plus one column per entry of ``null_plan``, which
    maps an extra attribute name to the 1-based tuple indices missing on it.
    Under ``X -> Y`` with the strict operator, exactly the adjacent pairs
    merge and nothing swaps. Each tuple may carry at most one missing value;
    plans breaking that, reusing X or Y as a name, or indexing outside 1..n
    are rejected.
    """
    if n < 2 or n % 2 != 0:
        raise ConfigError("tuple count must be even and at least 2")
    plan = {name: frozenset(ids) for name, ids in (null_plan or {}).items()}
    claimed: set[int] = set()
    for name, ids in plan.items():
        if name in ("X", "Y"):
            raise ConfigError("extra attributes must not be named X or Y")
        for i in ids:
            if not 1 <= i <= n:
                raise ConfigError(f"tuple index {i} outside 1..{n}")
            if i in claimed:
                raise ConfigError(
                    f"tuple {i} would have two missing values; at most one allowed"
                )
            claimed.add(i)

    extra = sorted(plan)
    attributes = ("X", "Y", *extra)
    rows = []
    for i in range(1, n + 1):
        row: list = [Decimal(i), Decimal((i + 1) // 2)]
        for name in extra:
            row.append(None if i in plan[name] else Decimal(i))
        rows.append(tuple(row))
    kinds = tuple(ColumnKind.NUMBER for _ in attributes)
    return Relation(attributes=attributes, kinds=kinds, rows=tuple(rows))
