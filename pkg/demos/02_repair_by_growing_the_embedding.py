"""Repair a failing statement by growing its embedding.

The table below breaks A -> B: rows t2 and t3 swap (A goes 6 -> 5 while B
goes 2 -> 3). Both rows are complete on {A, B}, so the statement fails
there. But t2 has missing values elsewhere, so widening the embedding with
one of those attributes drops t2 from the checked sub-relation and the
dependency holds on what remains.
"""

from eodcheck import (
    Statement,
    greedy_min_ignored,
    load_relation,
    min_ignored_embedding,
    naive_validate,
    validate_eod,
)

CSV = """A,B,C,D,F,G,H
4,1,1,8,20,10,1
6,2,3,?,30,?,2
5,3,5,10,?,50,3
7,4,5,12,40,100,?
"""

table = load_relation(CSV)
stmt = Statement.from_names(table, lhs=["A"], rhs=["B"])


def names(embedding):
    return "{" + ",".join(table.attributes[a] for a in sorted(embedding)) + "}"


outcome = validate_eod(table, stmt)
print("validator:", outcome.verdict.value, names(outcome.embedding),
      "ignoring", outcome.diagnostics.ignored, "tuple(s)")

# the exhaustive baseline agrees, trying every candidate embedding
exact = naive_validate(table, stmt)
print("exhaustive:", exact.verdict.value, names(exact.embedding),
      f"after {exact.diagnostics.iterations} candidate embeddings")

# minimizing the ignored tuples is NP-complete in general; at this size the
# exact search is instant, and the greedy set-cover baseline matches it
optimum = min_ignored_embedding(table, stmt)
greedy = greedy_min_ignored(table, stmt)
print("minimum ignored:", optimum[1], "via", names(optimum[0]))
print("greedy ignored: ", greedy[1], "via", names(greedy[0]))
