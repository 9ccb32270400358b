"""Walk through validating an order dependency on a table with gaps.

An employee list where salary should rise with rank, except one salary is
unknown. Requiring the dependency only on rows that are complete on
{Rank, Salary} makes it checkable, and it holds.
"""

from eodcheck import Statement, load_relation, validate_eod

CSV = """ID,Rank,Years,Age,Salary
t1,1,1,20,15000
t2,2,1,21,?
t3,3,2,22,25000
t4,4,3,25,30000
"""

employees = load_relation(CSV)
print(f"{employees.n_rows} rows, {employees.n_attributes} attributes")

# Rank -> Salary, checked on rows complete on both attributes
stmt = Statement.from_names(employees, lhs=["Rank"], rhs=["Salary"])
outcome = validate_eod(employees, stmt)

print("verdict:", outcome.verdict.value)
print("violations in the first pass:", outcome.diagnostics.swap_count,
      "swaps,", outcome.diagnostics.merge_count, "merges")

# Age -> Years involves no missing values at all and holds as a plain
# dependency: Years never decreases while Age rises.
stmt2 = Statement.from_names(employees, lhs=["Age"], rhs=["Years"])
print("Age -> Years:", validate_eod(employees, stmt2).verdict.value)
