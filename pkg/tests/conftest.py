from __future__ import annotations

import random
from decimal import Decimal
from itertools import combinations

import pytest

from eodcheck import (
    ColumnKind,
    Operator,
    PairKind,
    Relation,
    Statement,
    ViolationPair,
    load_relation,
)

# Four employees; the second has an unknown salary.
EMPLOYEE_CSV = """ID,Rank,Years,Age,Salary
t1,1,1,20,15000
t2,2,1,21,⊥
t3,3,2,22,25000
t4,4,3,25,30000
"""

# Seven-attribute sample with one missing value in each of D, F, G, H.
SAMPLE_CSV = """A,B,C,D,F,G,H
4,1,1,8,20,10,1
6,2,3,⊥,30,⊥,2
5,3,5,10,⊥,50,3
7,4,5,12,40,100,⊥
"""


@pytest.fixture
def employee() -> Relation:
    return load_relation(EMPLOYEE_CSV)


@pytest.fixture
def sample() -> Relation:
    return load_relation(SAMPLE_CSV)


def brute_force_violations(
    relation: Relation, stmt: Statement, universe
) -> tuple[set[ViolationPair], set[ViolationPair]]:
    """All violating pairs by direct pairwise evaluation of the defining
    predicates; independent of the partition-scan detector."""
    swaps: set[ViolationPair] = set()
    merges: set[ViolationPair] = set()
    for s, t in combinations(sorted(universe), 2):
        lhs_s = tuple(relation.rows[s][a] for a in stmt.lhs)
        lhs_t = tuple(relation.rows[t][a] for a in stmt.lhs)
        rhs_s = tuple(relation.rows[s][a] for a in stmt.rhs)
        rhs_t = tuple(relation.rows[t][a] for a in stmt.rhs)
        cl = (lhs_s > lhs_t) - (lhs_s < lhs_t)
        cr = (rhs_s > rhs_t) - (rhs_s < rhs_t)
        if (cl < 0 and cr > 0) or (cl > 0 and cr < 0):
            swaps.add(ViolationPair(s, t, PairKind.SWAP))
        elif stmt.operator is Operator.LEQ and cl == 0 and cr != 0:
            merges.add(ViolationPair(s, t, PairKind.MERGE))
        elif stmt.operator is Operator.LT and cl != 0 and cr == 0:
            merges.add(ViolationPair(s, t, PairKind.MERGE))
    return swaps, merges


def brute_force_valid(relation: Relation, stmt: Statement, universe) -> bool:
    swaps, merges = brute_force_violations(relation, stmt, universe)
    return not swaps and not merges


_TEXT_POOL = ("a", "b", "c", "d", "e", "zz")


def random_relation(
    rng: random.Random,
    *,
    max_attrs: int = 7,
    max_rows: int = 64,
    max_null_rate: float = 0.4,
) -> Relation:
    """Small random relation with mixed column kinds, tight value domains
    (to provoke ties), and a per-relation null rate drawn from
    [0, max_null_rate]."""
    n_attrs = rng.randint(2, max_attrs)
    n_rows = rng.randint(0, max_rows)
    null_rate = rng.uniform(0.0, max_null_rate)
    kinds = tuple(
        rng.choice((ColumnKind.NUMBER, ColumnKind.TEXT)) for _ in range(n_attrs)
    )
    rows = []
    for _ in range(n_rows):
        row = []
        for kind in kinds:
            if rng.random() < null_rate:
                row.append(None)
            elif kind is ColumnKind.NUMBER:
                row.append(Decimal(rng.randint(0, 4)))
            else:
                row.append(rng.choice(_TEXT_POOL))
        rows.append(tuple(row))
    names = tuple(chr(ord("A") + i) for i in range(n_attrs))
    return Relation(attributes=names, kinds=kinds, rows=tuple(rows))


def random_statement(rng: random.Random, relation: Relation) -> Statement:
    """Random disjoint-side statement over the relation's attributes."""
    n = relation.n_attributes
    lhs_size = rng.randint(1, min(2, n - 1))
    rhs_size = rng.randint(1, min(2, n - lhs_size))
    picked = rng.sample(range(n), lhs_size + rhs_size)
    operator = rng.choice((Operator.LEQ, Operator.LT))
    return Statement(
        tuple(picked[:lhs_size]), tuple(picked[lhs_size:]), operator
    )
