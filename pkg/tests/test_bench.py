from __future__ import annotations

import json
import statistics

import pytest

from eodcheck import (
    Algorithm,
    ConfigError,
    EmptyRelationError,
    Operator,
    Side,
    Statement,
    SweepConfig,
    aggregate_rows,
    build_missing_index,
    dump_relation,
    find_errors,
    gen_synthetic,
    load_relation,
    rank_correlation,
    rows_to_csv,
    rows_to_records,
    run_sweep,
)

from conftest import SAMPLE_CSV, brute_force_violations


@pytest.fixture
def sample_path(tmp_path):
    path = tmp_path / "sample.csv"
    path.write_text(SAMPLE_CSV, encoding="utf-8")
    return path


class TestRunSweep:
    def test_row_count_and_determinism(self, sample_path):
        cfg = SweepConfig(dataset=sample_path, sizes=[1], repetitions=10, seed=11)
        rows_a, _ = run_sweep(cfg)
        rows_b, _ = run_sweep(cfg)
        assert len(rows_a) == 10
        assert all(r.time_validEOD_us is not None for r in rows_a)
        stripped_a = [(r.size, r.rep, r.lhs, r.rhs, r.verdict, r.s_count, r.m_count, r.ignored) for r in rows_a]
        stripped_b = [(r.size, r.rep, r.lhs, r.rhs, r.verdict, r.s_count, r.m_count, r.ignored) for r in rows_b]
        assert stripped_a == stripped_b

    def test_sides_are_disjoint_and_sized(self, sample_path):
        cfg = SweepConfig(
            dataset=sample_path, side=Side.RHS, sizes=[2, 3], fixed_size=1,
            repetitions=4, seed=3,
        )
        rows, _ = run_sweep(cfg)
        for row in rows:
            assert len(row.rhs) == row.size
            assert len(row.lhs) == 1
            assert not set(row.lhs) & set(row.rhs)

    def test_size_too_large_is_config_error(self, sample_path):
        cfg = SweepConfig(dataset=sample_path, sizes=[7], fixed_size=1)
        with pytest.raises(ConfigError):
            run_sweep(cfg)

    def test_naive_timeout_marks_row(self, sample_path):
        cfg = SweepConfig(
            dataset=sample_path,
            sizes=[1],
            repetitions=3,
            seed=5,
            algorithm=Algorithm.BOTH,
            timeout_s=0.0,
        )
        rows, aggregates = run_sweep(cfg)
        assert all(r.time_naive_us is None for r in rows)
        assert all(r.time_validEOD_us is not None for r in rows)
        assert aggregates[0].mean_time_naive_us is None

    def test_aggregates_are_exact_means(self, sample_path):
        cfg = SweepConfig(dataset=sample_path, sizes=[1, 2], repetitions=5, seed=9)
        rows, aggregates = run_sweep(cfg)
        for agg in aggregates:
            group = [r for r in rows if r.size == agg.size]
            assert agg.mean_s_count == statistics.fmean(r.s_count for r in group)
            assert agg.mean_m_count == statistics.fmean(r.m_count for r in group)

    def test_accepts_in_memory_relation(self):
        rel = gen_synthetic(30, 4, 0.1, seed=2)
        rows, _ = run_sweep(SweepConfig(dataset=rel, sizes=[1], repetitions=2, seed=0))
        assert len(rows) == 2


class TestSerialization:
    def test_record_fields_and_null_marker(self, sample_path):
        cfg = SweepConfig(
            dataset=sample_path, sizes=[1], repetitions=2, seed=1,
            algorithm=Algorithm.BOTH, timeout_s=0.0,
        )
        rows, _ = run_sweep(cfg)
        lines = rows_to_records(rows).splitlines()
        assert len(lines) == 2
        record = json.loads(lines[0])
        assert list(record) == [
            "size", "rep", "side", "verdict", "s_count", "m_count",
            "ignored", "time_validEOD_us", "time_naive_us",
        ]
        assert record["time_naive_us"] is None

        csv_text = rows_to_csv(rows)
        header, first = csv_text.splitlines()[:2]
        assert header == "size,rep,side,verdict,s_count,m_count,ignored,time_validEOD_us,time_naive_us"
        assert first.endswith(",")  # missing naive time serializes empty


class TestGenSynthetic:
    def test_planted_swap_is_the_only_violation(self):
        rel = gen_synthetic(10, 4, 0.0, swaps=1, seed=13)
        stmt = Statement.from_names(rel, ["c0"], ["c1"])
        swaps, merges = find_errors(rel, stmt, range(10))
        expected_swaps, expected_merges = brute_force_violations(rel, stmt, range(10))
        assert swaps == expected_swaps and len(swaps) == 1
        assert merges == expected_merges == set()
        assert sorted(next(iter(swaps)).ids()) == [0, 1]

    def test_planted_merges_show_under_strict_operator(self):
        rel = gen_synthetic(12, 3, 0.0, merges=2, seed=4)
        stmt = Statement(lhs=(0,), rhs=(1,), operator=Operator.LT)
        swaps, merges = find_errors(rel, stmt, range(12))
        expected = brute_force_violations(rel, stmt, range(12))
        assert (swaps, merges) == expected
        assert len(merges) == 2 and not swaps

    def test_zero_null_rate_has_no_missing(self):
        rel = gen_synthetic(20, 5, 0.0, seed=1)
        assert build_missing_index(rel).attributes_with_missing == ()

    def test_null_rate_places_nulls_outside_statement_columns(self):
        rel = gen_synthetic(200, 6, 0.3, swaps=2, seed=8)
        index = build_missing_index(rel)
        assert index.missing[0] == frozenset() and index.missing[1] == frozenset()
        assert index.attributes_with_missing != ()
        # planted rows stay complete
        for attr in index.attributes_with_missing:
            assert not index.missing[attr] & {0, 1, 2, 3}

    def test_seeded_determinism_bytes(self):
        a = dump_relation(gen_synthetic(50, 5, 0.2, swaps=1, seed=7))
        b = dump_relation(gen_synthetic(50, 5, 0.2, swaps=1, seed=7))
        assert a == b

    def test_rejections(self):
        with pytest.raises(EmptyRelationError):
            gen_synthetic(0, 3, 0.0)
        with pytest.raises(ConfigError):
            gen_synthetic(3, 3, 0.0, swaps=2)
        with pytest.raises(ConfigError):
            gen_synthetic(5, 1, 0.0)
        with pytest.raises(ConfigError):
            gen_synthetic(5, 3, 1.0)

    def test_loadable_round_trip(self):
        rel = gen_synthetic(25, 4, 0.2, swaps=1, seed=3)
        again = load_relation(dump_relation(rel))
        assert again.rows == rel.rows


class TestRankCorrelation:
    def test_perfect_agreement(self):
        assert rank_correlation([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)

    def test_perfect_inversion(self):
        assert rank_correlation([1, 2, 3], [5, 4, 3]) == pytest.approx(-1.0)

    def test_ties_use_average_ranks(self):
        value = rank_correlation([1, 1, 2], [3, 3, 5])
        assert value == pytest.approx(1.0)

    def test_constant_input_is_zero(self):
        assert rank_correlation([1, 1, 1], [1, 2, 3]) == 0.0

    def test_aggregate_rows_groups_by_size(self, ):
        rel = gen_synthetic(30, 5, 0.1, seed=5)
        rows, aggregates = run_sweep(
            SweepConfig(dataset=rel, sizes=[1, 2], repetitions=3, seed=1)
        )
        assert [a.size for a in aggregates] == [1, 2]
        assert aggregate_rows(rows) == aggregates
