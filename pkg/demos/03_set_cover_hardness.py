"""Why minimizing ignored tuples is hard: it embeds weighted set cover.

`gen_hardness_instance` builds a relation where, under the strict operator,
each adjacent tuple pair merges (X goes 1,2,3,... while Y repeats 1,1,2,2,...).
Repairing the statement means covering every merge pair by some attribute
whose missing values delete one endpoint, paying one ignored tuple per
missing value. Choosing the cheapest cover is the set-cover choice.
"""

from eodcheck import (
    Operator,
    Statement,
    build_cover_instance,
    build_missing_index,
    find_errors,
    gen_hardness_instance,
    greedy_min_ignored,
    min_ignored_embedding,
)

# tuples 1 and 3 are missing on C, tuple 2 on D
table = gen_hardness_instance(4, {"C": {1, 3}, "D": {2}})
stmt = Statement.from_names(table, ["X"], ["Y"], Operator.LT)

swaps, merges = find_errors(table, stmt, range(table.n_rows))
print("merge pairs:", sorted(p.ids() for p in merges), "swaps:", len(swaps))

index = build_missing_index(table)
cover = build_cover_instance(index, merges, stmt.embedding, table.n_rows)
for attr, subset in cover.subsets.items():
    print(
        f"adding {table.attributes[attr]} deletes {sorted(p.ids() for p in subset)}"
        f" at a cost of {cover.weights[attr]} ignored tuple(s)"
    )

# C covers both pairs at weight 2 (ratio 1.0); D covers one at weight 1
# (ratio 1.0): the tie goes to the larger coverage, which is optimal here
print("greedy: ", greedy_min_ignored(table, stmt))
print("optimum:", min_ignored_embedding(table, stmt))
