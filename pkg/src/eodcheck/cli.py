"""Command-line frontend.

Subcommands: validate, oracle, inspect, bench, gen. Exit codes are a stable
contract: 0 the statement holds (possibly with a grown embedding), 1 not
valid, 2 usage or data errors, 3 refusal of an exhaustive search past its
attribute cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import (
    Algorithm,
    Side,
    SweepConfig,
    gen_synthetic,
    rows_to_csv,
    rows_to_records,
    run_sweep,
)
from .embedding import ValidationOutcome, Verdict, validate_eod
from .errors import CapExceededError, EodCheckError, OracleTimeoutError
from .oracle import greedy_min_ignored, min_ignored_embedding, naive_validate
from .order import Operator, Statement
from .relation import (
    DEFAULT_NULL_TOKENS,
    Relation,
    build_missing_index,
    dump_relation,
    load_relation_path,
)

NULL_TOKEN_ENV = "EODCHECK_NULL_TOKENS"

EXIT_HOLDS = 0
EXIT_NOT_VALID = 1
EXIT_ERROR = 2
EXIT_CAP_REFUSED = 3


def _null_tokens(args) -> frozenset[str]:
    if args.null_token:
        return frozenset(args.null_token)
    env = os.environ.get(NULL_TOKEN_ENV)
    if env is not None:
        return frozenset(env.split(","))
    return DEFAULT_NULL_TOKENS


def _delimiter(args) -> str:
    return "\t" if args.delimiter == "\\t" else args.delimiter


def _load(args) -> Relation:
    return load_relation_path(
        args.dataset,
        delimiter=_delimiter(args),
        null_tokens=_null_tokens(args),
        header=not args.no_header,
    )


def _split_names(raw: str) -> list[str]:
    names = [part.strip() for part in raw.split(",") if part.strip()]
    if not names:
        raise EodCheckError(f"no attribute names in {raw!r}")
    return names


def _statement(args, relation: Relation) -> Statement:
    operator = Operator.LEQ if args.op == "leq" else Operator.LT
    embedding = _split_names(args.embedding) if args.embedding else None
    return Statement.from_names(
        relation,
        _split_names(args.lhs),
        _split_names(args.rhs),
        operator,
        embedding,
    )


def _names(relation: Relation, attrs) -> list[str]:
    return [relation.attributes[a] for a in sorted(attrs)]


def _emit(args, record: dict, human: str) -> None:
    if args.output == "records":
        print(json.dumps(record))
    else:
        print(human, end="")


def _outcome_record(relation: Relation, outcome: ValidationOutcome) -> dict:
    record = {
        "verdict": outcome.verdict.value,
        "s_count": outcome.diagnostics.swap_count,
        "m_count": outcome.diagnostics.merge_count,
        "ignored": outcome.diagnostics.ignored,
        "iterations": outcome.diagnostics.iterations,
        "elapsed_us": int(outcome.diagnostics.elapsed_s * 1e6),
    }
    if outcome.embedding is not None:
        record["embedding"] = _names(relation, outcome.embedding)
    if outcome.witness is not None:
        record["witness"] = {
            "s": outcome.witness.s,
            "t": outcome.witness.t,
            "kind": outcome.witness.kind.value,
        }
    return record


def _witness_lines(relation: Relation, stmt: Statement, outcome: ValidationOutcome) -> str:
    w = outcome.witness
    lines = [f"witness: tuples {w.s} and {w.t} ({w.kind.value})\n"]
    shown = list(dict.fromkeys(stmt.lhs + stmt.rhs))
    for tid in (w.s, w.t):
        values = ", ".join(
            f"{relation.attributes[a]}={relation.rows[tid][a]}" for a in shown
        )
        lines.append(f"  tuple {tid}: {values}\n")
    return "".join(lines)


def _cmd_validate(args) -> int:
    relation = _load(args)
    stmt = _statement(args, relation)
    outcome = validate_eod(relation, stmt)

    human = [f"verdict: {outcome.verdict.value.replace('_', ' ')}\n"]
    if outcome.embedding is not None:
        human.append(f"embedding: {', '.join(_names(relation, outcome.embedding))}\n")
    if outcome.witness is not None:
        human.append(_witness_lines(relation, stmt, outcome))
    d = outcome.diagnostics
    human.append(f"swaps: {d.swap_count}  merges: {d.merge_count}\n")
    human.append(f"ignored tuples: {d.ignored}\n")
    human.append(f"iterations: {d.iterations}\n")
    human.append(f"elapsed: {d.elapsed_s * 1e3:.3f} ms\n")

    _emit(args, _outcome_record(relation, outcome), "".join(human))
    return EXIT_HOLDS if outcome.holds else EXIT_NOT_VALID


def _cmd_oracle(args) -> int:
    relation = _load(args)
    stmt = _statement(args, relation)

    fast = validate_eod(relation, stmt)
    timeout = args.timeout if args.timeout and args.timeout > 0 else None
    try:
        exact = naive_validate(relation, stmt, cap=args.cap, timeout_s=timeout)
        exact_cell = exact.verdict.value
        exact_emb = _names(relation, exact.embedding) if exact.embedding else None
        exact_ignored = exact.diagnostics.ignored if exact.holds else None
    except OracleTimeoutError:
        exact, exact_cell, exact_emb, exact_ignored = None, "timeout", None, None

    optimum = min_ignored_embedding(relation, stmt, cap=args.cap)
    greedy = greedy_min_ignored(relation, stmt)

    fast_ignored = fast.diagnostics.ignored if fast.holds else None
    gap = (
        fast_ignored - optimum[1]
        if fast_ignored is not None and optimum is not None
        else None
    )

    record = {
        "validEOD": {
            "verdict": fast.verdict.value,
            "embedding": _names(relation, fast.embedding) if fast.embedding else None,
            "ignored": fast_ignored,
        },
        "naive": {
            "verdict": exact_cell,
            "embedding": exact_emb,
            "ignored": exact_ignored,
        },
        "minimum": (
            {"embedding": _names(relation, optimum[0]), "ignored": optimum[1]}
            if optimum
            else None
        ),
        "greedy": (
            {"embedding": _names(relation, greedy[0]), "ignored": greedy[1]}
            if greedy
            else None
        ),
        "gap_vs_minimum": gap,
    }

    def cell(verdict, emb, ignored) -> str:
        parts = [verdict]
        if emb:
            parts.append("{" + ",".join(emb) + "}")
        if ignored is not None:
            parts.append(f"ignored={ignored}")
        return "  ".join(parts)

    human = [
        f"validEOD: {cell(fast.verdict.value, record['validEOD']['embedding'], fast_ignored)}\n",
        f"naive:    {cell(exact_cell, exact_emb, exact_ignored)}\n",
        f"minimum:  {cell('holds', record['minimum']['embedding'], optimum[1]) if optimum else 'none'}\n",
        f"greedy:   {cell('holds', record['greedy']['embedding'], greedy[1]) if greedy else 'none'}\n",
        f"gap vs minimum: {gap if gap is not None else 'n/a'}\n",
    ]
    _emit(args, record, "".join(human))
    return EXIT_HOLDS if fast.holds else EXIT_NOT_VALID


def _cmd_inspect(args) -> int:
    relation = _load(args)
    index = build_missing_index(relation)
    null_counts = [len(ids) for ids in index.missing]
    total = sum(null_counts)
    record = {
        "rows": relation.n_rows,
        "attributes": relation.n_attributes,
        "columns": [
            {
                "name": relation.attributes[a],
                "kind": relation.kinds[a].value,
                "nulls": null_counts[a],
            }
            for a in range(relation.n_attributes)
        ],
        "total_nulls": total,
        "attributes_with_missing": _names(relation, index.attributes_with_missing),
    }
    human = [f"rows: {relation.n_rows}\nattributes: {relation.n_attributes}\n"]
    for col in record["columns"]:
        human.append(f"  {col['name']}: {col['kind']}, nulls={col['nulls']}\n")
    human.append(f"total nulls: {total}\n")
    human.append(
        "attributes with missing values: "
        + (", ".join(record["attributes_with_missing"]) or "(none)")
        + "\n"
    )
    _emit(args, record, "".join(human))
    return EXIT_HOLDS


def _cmd_bench(args) -> int:
    cfg = SweepConfig(
        dataset=args.dataset,
        side=Side(args.side),
        sizes=[int(s) for s in args.sizes.split(",")],
        fixed_size=args.fixed,
        repetitions=args.reps,
        seed=args.seed,
        algorithm=Algorithm(args.algorithm),
        timeout_s=args.timeout,
        operator=Operator.LEQ if args.op == "leq" else Operator.LT,
        delimiter=_delimiter(args),
        null_tokens=_null_tokens(args),
        header=not args.no_header,
        naive_cap=args.cap,
    )
    rows, aggregates = run_sweep(cfg)

    prefix = Path(args.out)
    csv_path = prefix.with_suffix(".csv")
    records_path = prefix.with_suffix(".jsonl")
    csv_path.write_text(rows_to_csv(rows), encoding="utf-8")
    records_path.write_text(rows_to_records(rows), encoding="utf-8")

    record = {
        "rows_written": len(rows),
        "csv": str(csv_path),
        "records": str(records_path),
        "aggregates": [
            {
                "size": a.size,
                "mean_time_validEOD_us": a.mean_time_validEOD_us,
                "mean_time_naive_us": a.mean_time_naive_us,
                "mean_s_count": a.mean_s_count,
                "mean_m_count": a.mean_m_count,
            }
            for a in aggregates
        ],
    }
    human = [f"wrote {len(rows)} rows to {csv_path} and {records_path}\n"]
    for a in aggregates:
        human.append(
            f"size {a.size}: mean validEOD "
            f"{_fmt_us(a.mean_time_validEOD_us)}, mean naive "
            f"{_fmt_us(a.mean_time_naive_us)}, mean |S| {_fmt(a.mean_s_count)}, "
            f"mean |M| {_fmt(a.mean_m_count)}\n"
        )
    _emit(args, record, "".join(human))
    return EXIT_HOLDS


def _fmt(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.1f}"


def _fmt_us(x: float | None) -> str:
    return "n/a" if x is None else f"{x / 1e3:.2f} ms"


def _cmd_gen(args) -> int:
    relation = gen_synthetic(
        args.rows,
        args.attrs,
        args.null_rate,
        swaps=args.swaps,
        merges=args.merges,
        seed=args.seed,
    )
    text = dump_relation(relation, delimiter=_delimiter(args), null_token=args.write_null)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {relation.n_rows} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_HOLDS


def _add_load_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--delimiter", default=",", help="field delimiter (use \\t for tab)")
    parser.add_argument(
        "--null-token",
        action="append",
        default=None,
        metavar="TOKEN",
        help="treat TOKEN as a missing value; repeatable, replaces the default set",
    )
    parser.add_argument(
        "--no-header",
        action="store_true",
        help="no header row; address columns by 1-based index",
    )
    parser.add_argument(
        "--output", choices=("human", "records"), default="human",
        help="report style: human-readable or line-delimited JSON",
    )


def _add_statement_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lhs", required=True, help="comma-separated ordering attributes")
    parser.add_argument("--rhs", required=True, help="comma-separated ordered attributes")
    parser.add_argument(
        "--embedding",
        default=None,
        help="comma-separated embedding attributes (default: lhs plus rhs)",
    )
    parser.add_argument("--op", choices=("leq", "lt"), default="leq")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eodcheck",
        description="Validate order dependencies on tables with missing values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate one statement")
    p_validate.add_argument("dataset")
    _add_statement_options(p_validate)
    _add_load_options(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    p_oracle = sub.add_parser(
        "oracle", help="compare the validator against the exhaustive baselines"
    )
    p_oracle.add_argument("dataset")
    _add_statement_options(p_oracle)
    _add_load_options(p_oracle)
    p_oracle.add_argument("--cap", type=int, default=20, help="free-attribute cap")
    p_oracle.add_argument(
        "--timeout", type=float, default=0.0, help="naive search timeout in seconds (0: none)"
    )
    p_oracle.set_defaults(func=_cmd_oracle)

    p_inspect = sub.add_parser("inspect", help="summarize a dataset")
    p_inspect.add_argument("dataset")
    _add_load_options(p_inspect)
    p_inspect.set_defaults(func=_cmd_inspect)

    p_bench = sub.add_parser("bench", help="run a side-size sweep")
    p_bench.add_argument("dataset")
    _add_load_options(p_bench)
    p_bench.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    p_bench.add_argument("--sizes", default="1", help="comma-separated side sizes")
    p_bench.add_argument("--fixed", type=int, default=1, help="size of the other side")
    p_bench.add_argument("--reps", type=int, default=10)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--algorithm", choices=("valideod", "naive", "both"), default="valideod"
    )
    p_bench.add_argument("--timeout", type=float, default=60.0)
    p_bench.add_argument("--cap", type=int, default=20)
    p_bench.add_argument("--op", choices=("leq", "lt"), default="leq")
    p_bench.add_argument("--out", default="sweep", help="output file prefix")
    p_bench.set_defaults(func=_cmd_bench)

    p_gen = sub.add_parser("gen", help="generate a synthetic dataset")
    p_gen.add_argument("--rows", type=int, required=True)
    p_gen.add_argument("--attrs", type=int, default=10)
    p_gen.add_argument("--null-rate", type=float, default=0.0)
    p_gen.add_argument("--swaps", type=int, default=0)
    p_gen.add_argument("--merges", type=int, default=0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--delimiter", default=",")
    p_gen.add_argument(
        "--write-null", default="", help="token written for missing values"
    )
    p_gen.add_argument("--out", default=None, help="output path (default: stdout)")
    p_gen.set_defaults(func=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP_REFUSED
    except EodCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
