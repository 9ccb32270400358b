"""Measure how validation time reacts to statement-side sizes.

Generates a synthetic table, sweeps the lhs size from 1 to 4 with ten
random statement draws per size, and prints per-size means. The validator's
time follows the number of detected violations, not the side size; the
exhaustive baseline blows up with the attribute count instead.
"""

from eodcheck import (
    Algorithm,
    SweepConfig,
    gen_synthetic,
    rank_correlation,
    rows_to_records,
    run_sweep,
)

table = gen_synthetic(rows=2000, attrs=8, null_rate=0.05, seed=42)

cfg = SweepConfig(
    dataset=table,
    sizes=[1, 2, 3, 4],
    repetitions=10,
    seed=7,
    algorithm=Algorithm.VALIDEOD,
)
rows, aggregates = run_sweep(cfg)

for agg in aggregates:
    print(
        f"size {agg.size}: mean time {agg.mean_time_validEOD_us / 1e3:6.2f} ms, "
        f"mean |S| {agg.mean_s_count:7.1f}, mean |M| {agg.mean_m_count:5.1f}"
    )

times = [r.time_validEOD_us for r in rows]
errors = [r.s_count + r.m_count for r in rows]
print("rank correlation of time with |S|+|M|:",
      f"{rank_correlation(times, errors):+.2f}")

# rows serialize to line-delimited records for downstream tooling
print(rows_to_records(rows[:2]), end="")
