"""Benchmark harness: side-size sweeps, synthetic data, result serialization.

A sweep draws random disjoint lhs/rhs attribute lists of the configured
sizes, validates each drawn statement (heuristic validator, exhaustive
baseline, or both), and records per-run witness counts and wall times.
Draws are seeded, so two runs of the same config produce the same rows
except for the recorded times.
"""

from __future__ import annotations

import csv
import io
import json
import random
import statistics
import time
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence, Union

from .embedding import validate_eod
from .errors import CapExceededError, ConfigError, EmptyRelationError, OracleTimeoutError
from .oracle import DEFAULT_FREE_ATTRIBUTE_CAP, naive_validate
from .order import Operator, Statement
from .relation import (
    DEFAULT_NULL_TOKENS,
    ColumnKind,
    Relation,
    load_relation_path,
)


class Side(Enum):
    LHS = "lhs"
    RHS = "rhs"


class Algorithm(Enum):
    VALIDEOD = "valideod"
    NAIVE = "naive"
    BOTH = "both"


@dataclass
class SweepConfig:
    """One sweep: vary the size of one statement side, fix the other.

    ``dataset`` may be a file path or an already loaded Relation. Each
    (size, repetition) run draws lhs and rhs disjointly, without
    replacement, from the full attribute set; the embedding is lhs | rhs.
    """

    dataset: Union[str, Path, Relation]
    side: Side = Side.LHS
    sizes: Sequence[int] = (1,)
    fixed_size: int = 1
    repetitions: int = 10
    seed: int = 0
    algorithm: Algorithm = Algorithm.VALIDEOD
    timeout_s: float = 60.0
    operator: Operator = Operator.LEQ
    delimiter: str = ","
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS
    header: bool = True
    naive_cap: int = DEFAULT_FREE_ATTRIBUTE_CAP


@dataclass
class SweepRow:
    """One validation run. Times are microseconds; None marks a run that
    timed out or was not executed."""

    size: int
    rep: int
    side: str
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    verdict: str
    s_count: int | None
    m_count: int | None
    ignored: int | None
    time_validEOD_us: int | None
    time_naive_us: int | None


@dataclass
class SizeAggregate:
    size: int
    mean_time_validEOD_us: float | None
    mean_time_naive_us: float | None
    mean_s_count: float | None
    mean_m_count: float | None


RECORD_FIELDS = (
    "size",
    "rep",
    "side",
    "verdict",
    "s_count",
    "m_count",
    "ignored",
    "time_validEOD_us",
    "time_naive_us",
)


def _load_dataset(cfg: SweepConfig) -> Relation:
    if isinstance(cfg.dataset, Relation):
        return cfg.dataset
    return load_relation_path(
        cfg.dataset,
        delimiter=cfg.delimiter,
        null_tokens=cfg.null_tokens,
        header=cfg.header,
    )


def run_sweep(cfg: SweepConfig) -> tuple[list[SweepRow], list[SizeAggregate]]:
    """Execute a sweep and aggregate per-size means.

    Raises ConfigError when a requested size cannot be drawn disjointly from
    the attribute set. Naive runs honor ``cfg.timeout_s`` and the free
    attribute cap; a refused or timed-out run records a missing naive time.
    """
    if cfg.repetitions < 1 or any(s < 1 for s in cfg.sizes):
        raise ConfigError("sizes and repetitions must be at least 1")
    relation = _load_dataset(cfg)
    n_attrs = relation.n_attributes
    rng = random.Random(cfg.seed)
    rows: list[SweepRow] = []

    for size in cfg.sizes:
        lhs_size, rhs_size = (
            (size, cfg.fixed_size) if cfg.side is Side.LHS else (cfg.fixed_size, size)
        )
        if lhs_size + rhs_size > n_attrs:
            raise ConfigError(
                f"cannot draw {lhs_size}+{rhs_size} disjoint attributes "
                f"from {n_attrs}"
            )
        for rep in range(cfg.repetitions):
            picked = rng.sample(range(n_attrs), lhs_size + rhs_size)
            lhs, rhs = tuple(picked[:lhs_size]), tuple(picked[lhs_size:])
            stmt = Statement(lhs, rhs, cfg.operator)

            verdict: str | None = None
            s_count = m_count = ignored = None
            time_valideod = time_naive = None

            if cfg.algorithm in (Algorithm.VALIDEOD, Algorithm.BOTH):
                t0 = time.perf_counter()
                outcome = validate_eod(relation, stmt)
                time_valideod = int((time.perf_counter() - t0) * 1e6)
                verdict = outcome.verdict.value
                s_count = outcome.diagnostics.swap_count
                m_count = outcome.diagnostics.merge_count
                ignored = outcome.diagnostics.ignored

            if cfg.algorithm in (Algorithm.NAIVE, Algorithm.BOTH):
                t0 = time.perf_counter()
                try:
                    outcome = naive_validate(
                        relation, stmt, cap=cfg.naive_cap, timeout_s=cfg.timeout_s
                    )
                    time_naive = int((time.perf_counter() - t0) * 1e6)
                    if verdict is None:
                        verdict = outcome.verdict.value
                        s_count = outcome.diagnostics.swap_count
                        m_count = outcome.diagnostics.merge_count
                        ignored = outcome.diagnostics.ignored
                except (OracleTimeoutError, CapExceededError):
                    time_naive = None
                    if verdict is None:
                        verdict = "timeout"

            rows.append(
                SweepRow(
                    size=size,
                    rep=rep,
                    side=cfg.side.value,
                    lhs=tuple(relation.attributes[a] for a in lhs),
                    rhs=tuple(relation.attributes[a] for a in rhs),
                    verdict=verdict or "skipped",
                    s_count=s_count,
                    m_count=m_count,
                    ignored=ignored,
                    time_validEOD_us=time_valideod,
                    time_naive_us=time_naive,
                )
            )

    return rows, aggregate_rows(rows)


def _mean(values: list[float]) -> float | None:
    return statistics.fmean(values) if values else None


def aggregate_rows(rows: Iterable[SweepRow]) -> list[SizeAggregate]:
    """Arithmetic means per size over the rows that carry a value."""
    by_size: dict[int, list[SweepRow]] = {}
    for row in rows:
        by_size.setdefault(row.size, []).append(row)
    out = []
    for size in sorted(by_size):
        group = by_size[size]
        out.append(
            SizeAggregate(
                size=size,
                mean_time_validEOD_us=_mean(
                    [r.time_validEOD_us for r in group if r.time_validEOD_us is not None]
                ),
                mean_time_naive_us=_mean(
                    [r.time_naive_us for r in group if r.time_naive_us is not None]
                ),
                mean_s_count=_mean([r.s_count for r in group if r.s_count is not None]),
                mean_m_count=_mean([r.m_count for r in group if r.m_count is not None]),
            )
        )
    return out


def _record(row: SweepRow) -> dict:
    return {
        "size": row.size,
        "rep": row.rep,
        "side": row.side,
        "verdict": row.verdict,
        "s_count": row.s_count,
        "m_count": row.m_count,
        "ignored": row.ignored,
        "time_validEOD_us": row.time_validEOD_us,
        "time_naive_us": row.time_naive_us,
    }


def rows_to_records(rows: Iterable[SweepRow]) -> str:
    """Line-delimited structured records, one object per row."""
    return "".join(json.dumps(_record(r)) + "\n" for r in rows)


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    """Delimited-text form of the sweep rows; missing times are empty fields."""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=RECORD_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        rec = _record(row)
        writer.writerow({k: ("" if v is None else v) for k, v in rec.items()})
    return out.getvalue()


def gen_synthetic(
    rows: int,
    attrs: int,
    null_rate: float,
    *,
    swaps: int = 0,
    merges: int = 0,
    seed: int = 0,
) -> Relation:
    """Seeded synthetic relation with planted violations.

    Columns are named c0..c{attrs-1}. c0 is strictly increasing and c1
    follows it except at planted positions, so the statement c0 -> c1 has
    exactly the planted swap pairs as violations under ``<=`` and the
    planted merge pairs as additional violations under ``<``. Planted pairs
    occupy the leading rows (two rows each, swaps first) and are kept free
    of missing values, so they can never be repaired away. Remaining columns
    take seeded random values from small per-column domains and carry
    missing values at ``null_rate`` per cell.
    """
    if rows <= 0:
        raise EmptyRelationError("a synthetic relation needs at least one row")
    if attrs < 2:
        raise ConfigError("need at least two attributes for a statement")
    if not 0 <= null_rate < 1:
        raise ConfigError("null rate must be in [0, 1)")
    planted = swaps + merges
    if 2 * planted > rows:
        raise ConfigError(
            f"violation plan needs {2 * planted} rows but only {rows} requested"
        )

    rng = random.Random(seed)
    col0 = [Decimal(i) for i in range(rows)]
    col1 = [Decimal(i) for i in range(rows)]
    for k in range(swaps):
        a = 2 * k
        col1[a], col1[a + 1] = col1[a + 1], col1[a]
    for k in range(merges):
        a = 2 * (swaps + k)
        col1[a + 1] = col1[a]
    protected = set(range(2 * planted))

    columns: list[list] = [col0, col1]
    domains = (2, 3, 5, 8, 13, 21, 34, max(2, rows // 4))
    for _ in range(attrs - 2):
        domain = rng.choice(domains)
        column = []
        for tid in range(rows):
            value = Decimal(rng.randrange(domain))
            is_null = rng.random() < null_rate
            column.append(None if is_null and tid not in protected else value)
        columns.append(column)

    attributes = tuple(f"c{i}" for i in range(attrs))
    kinds = tuple(ColumnKind.NUMBER for _ in attributes)
    data = tuple(
        tuple(columns[a][tid] for a in range(attrs)) for tid in range(rows)
    )
    return Relation(attributes=attributes, kinds=kinds, rows=data)


def rank_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties.

    Returns 0.0 when either input is constant (correlation undefined).
    """
    if len(xs) != len(ys):
        raise ConfigError("rank correlation needs sequences of equal length")

    def ranks(values: Sequence[float]) -> list[float]:
        order = sorted(range(len(values)), key=lambda i: values[i])
        out = [0.0] * len(values)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
                j += 1
            avg = (i + j) / 2 + 1
            for k in range(i, j + 1):
                out[order[k]] = avg
            i = j + 1
        return out

    rx, ry = ranks(xs), ranks(ys)
    if len(set(rx)) < 2 or len(set(ry)) < 2:
        return 0.0
    return statistics.correlation(rx, ry)
