from __future__ import annotations

import io
from decimal import Decimal

import pytest

from eodcheck import (
    ColumnKind,
    EmptyRelationError,
    ParseError,
    SchemaError,
    build_missing_index,
    complete_tuple_ids,
    dump_relation,
    infer_column_kinds,
    load_relation,
    parse_number,
    present_in,
)


class TestInferColumnKinds:
    def test_all_numeric_column_is_number(self):
        assert infer_column_kinds([["15000", "25000", "30000"]]) == [ColumnKind.NUMBER]

    def test_all_null_column_is_text(self):
        assert infer_column_kinds([[]]) == [ColumnKind.TEXT]

    def test_one_non_numeric_cell_forces_text(self):
        assert infer_column_kinds([["1", "2", "2a"]]) == [ColumnKind.TEXT]

    def test_non_finite_numbers_are_text(self):
        assert infer_column_kinds([["NaN", "1"]]) == [ColumnKind.TEXT]
        assert infer_column_kinds([["Infinity"]]) == [ColumnKind.TEXT]

    def test_parse_number_exact(self):
        assert parse_number(" 10.50 ") == Decimal("10.50")
        assert parse_number("1e3") == Decimal(1000)
        assert parse_number("abc") is None
        assert parse_number("nan") is None


class TestLoadRelation:
    def test_employee_table(self, employee):
        assert employee.n_rows == 4
        assert employee.n_attributes == 5
        assert employee.attributes == ("ID", "Rank", "Years", "Age", "Salary")
        salary = employee.attribute_index("Salary")
        assert employee.kinds[salary] is ColumnKind.NUMBER
        assert employee.kinds[employee.attribute_index("ID")] is ColumnKind.TEXT
        index = build_missing_index(employee)
        assert index.missing[salary] == {1}
        assert index.attributes_with_missing == (salary,)

    def test_header_only_is_empty(self):
        with pytest.raises(EmptyRelationError):
            load_relation("A,B,C\n")

    def test_empty_input(self):
        with pytest.raises(EmptyRelationError):
            load_relation("")

    def test_mixed_column_becomes_text_and_compares_lexicographically(self):
        rel = load_relation("a,b,c\n1,10,x\n2,abc,y\n3,9,z\n")
        b = rel.attribute_index("b")
        assert rel.kinds[b] is ColumnKind.TEXT
        assert rel.rows[0][b] == "10"
        # lexicographic: "10" < "9"
        assert rel.rows[0][b] < rel.rows[2][b]

    def test_ragged_row_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            load_relation("A,B\n1,2\n3\n")

    def test_duplicate_attribute(self):
        with pytest.raises(SchemaError, match="A"):
            load_relation("A,B,A\n1,2,3\n")

    def test_no_header_names_columns_by_index(self):
        rel = load_relation("5,x\n6,y\n", header=False)
        assert rel.attributes == ("1", "2")
        assert rel.rows[0][0] == Decimal(5)

    def test_custom_delimiter_and_null_tokens(self):
        rel = load_relation("A;B\n1;NA\n2;3\n", delimiter=";", null_tokens={"NA"})
        assert rel.rows[0][1] is None
        assert rel.rows[1][1] == Decimal(3)

    def test_bytes_and_file_object_sources(self):
        rel_bytes = load_relation(b"A,B\n1,2\n")
        rel_io = load_relation(io.StringIO("A,B\n1,2\n"))
        assert rel_bytes == rel_io

    def test_whitespace_only_cell_is_null_by_default(self):
        rel = load_relation("A,B\n1,   \n2,3\n")
        assert rel.rows[0][1] is None


class TestRoundTrip:
    def test_dump_then_load_is_identical(self, sample):
        text = dump_relation(sample, null_token="⊥")
        again = load_relation(text)
        assert again == sample

    def test_round_trip_with_quoting_and_padding(self):
        src = 'A,B\n"x,1", padded \nplain,2\n'
        rel = load_relation(src)
        again = load_relation(dump_relation(rel))
        assert again == rel
        assert rel.rows[0][0] == "x,1"
        assert rel.rows[0][1] == " padded "


class TestMissingIndex:
    def test_sample_table_index(self, sample):
        index = build_missing_index(sample)
        named = {
            sample.attributes[a]: set(index.missing[a])
            for a in index.attributes_with_missing
        }
        assert named == {"D": {1}, "F": {2}, "G": {1}, "H": {3}}

    def test_no_nulls_means_empty(self):
        rel = load_relation("A,B\n1,2\n3,4\n")
        index = build_missing_index(rel)
        assert index.attributes_with_missing == ()

    def test_present_in(self, sample):
        index = build_missing_index(sample)
        abd = frozenset(sample.attribute_indexes(["A", "B", "D"]))
        assert not present_in(index, abd, 1)
        assert present_in(index, abd, 0)
        assert present_in(index, frozenset(), 1)  # empty embedding excludes nothing
        abfh = frozenset(sample.attribute_indexes(["A", "B", "F", "H"]))
        assert not present_in(index, abfh, 2)
        assert not present_in(index, abfh, 3)

    def test_complete_tuple_ids_monotone_in_embedding(self, sample):
        index = build_missing_index(sample)
        small = frozenset(sample.attribute_indexes(["A", "B"]))
        large = small | frozenset(sample.attribute_indexes(["D", "H"]))
        sub_small = set(complete_tuple_ids(index, small, sample.n_rows))
        sub_large = set(complete_tuple_ids(index, large, sample.n_rows))
        assert sub_large <= sub_small
