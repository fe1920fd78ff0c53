"""Tests for the published-table reproduction."""

import math

import pytest

from uniratio import NormalizationMismatchError
from uniratio.named import FamilyParams
from uniratio.table2 import (
    Table2Entry,
    check_mahler_normalization,
    load_table2,
    parse_family_label,
    reproduce_row,
    reproduce_table2,
)


P23_ENTRY = Table2Entry(row="1", label="P(2, 3)", measure="1.2554338662666087457", lc="0.1328095098966884")
SEQUENCE_ENTRY = Table2Entry(
    row="3", label="[++000, +0-0+, 000++]", measure="1.3090983806523284595", lc="0.2970136797597501"
)
CHECKED_LABELS = [
    "P(2, 3)",
    "P(2, 1)",
    "P(1, 3)",
    "P(3, 5)",
    "S(1, 3,+)",
    "P(3, 2)",
    "P(3, 1)",
    "R(1, 5)",
    "P(4, 7)",
    "Q(1, 6)",
]


@pytest.fixture(scope="module")
def table():
    return {row.label: row for row in reproduce_table2()}


class TestParseFamilyLabel:
    def test_p(self):
        assert parse_family_label("P(2, 3)") == FamilyParams("P", a=2, b=3)

    def test_s_signs(self):
        assert parse_family_label("S(1, 3,+)") == FamilyParams("S", a=1, b=3, epsilon=1)
        assert parse_family_label("S(2, 7,-)") == FamilyParams("S", a=2, b=7, epsilon=-1)

    def test_sequence_notation(self):
        assert parse_family_label("[++, +0---0+, ++]") is None

    def test_sign_only_for_s(self):
        assert parse_family_label("P(2, 3,+)") is None
        assert parse_family_label("S(1, 3)") is None


class TestLoadTable2:
    def test_rows(self):
        entries = load_table2()
        assert entries[0] == P23_ENTRY
        assert [entry.row for entry in entries[:3]] == ["1", "2", "2'"]
        assert entries[-1].label == "S(1, 9,+)"

    def test_every_label_parses_or_is_a_sequence(self):
        for entry in load_table2():
            assert entry.params is not None or entry.label.startswith("[")


class TestReproduceRow:
    def test_p23(self):
        row = reproduce_row(P23_ENTRY)
        assert row.status == "ok"
        assert row.lc_abs_err < 1e-8
        assert row.measure_abs_err < 1e-6

    def test_sequence_row_skipped(self):
        row = reproduce_row(SEQUENCE_ENTRY)
        assert row.status == "skipped"
        assert row.computed_lc is None
        assert row.lc_abs_err is None
        assert row.to_dict()["computed_measure"] is None

    def test_wrong_printed_value_is_a_mismatch(self):
        entry = Table2Entry(row="1", label="P(2, 3)", measure="1.2554338662666087457", lc="0.14")
        assert reproduce_row(entry).status == "mismatch"


class TestReproduceTable2:
    @pytest.mark.parametrize("label", CHECKED_LABELS)
    def test_checked_rows_reproduced(self, table, label):
        assert table[label].status == "ok"

    def test_family_rows_computed(self, table):
        for row in table.values():
            assert (row.computed_lc is None) == (row.status == "skipped")

    def test_equal_measure_rows(self, table):
        p21, p13 = table["P(2, 1)"], table["P(1, 3)"]
        assert p21.computed_measure == pytest.approx(p13.computed_measure, abs=1e-9)
        assert p21.computed_lc == pytest.approx(0.1608612465103325, abs=1e-8)
        assert p13.computed_lc == pytest.approx(1 / 3, abs=1e-12)

    def test_sequence_rows_skipped(self, table):
        skipped = [label for label, row in table.items() if row.status == "skipped"]
        assert skipped == ["[++000, +0-0+, 000++]", "[++, +0---0+, ++]", "[++00000, ++0-0++, 00000++]"]

    def test_mapper_keeps_order(self):
        seen = []

        def mapper(func, entries):
            entries = list(entries)
            seen.extend(entry.label for entry in entries)
            return [func(entry) for entry in entries]

        rows = reproduce_table2(mapper)
        assert [row.label for row in rows] == seen


class TestMahlerNormalization:
    def test_published_measures(self, table):
        for label in ("P(2, 3)", "P(2, 1)", "P(1, 3)"):
            row = table[label]
            check_mahler_normalization(row.computed_measure, row.published_measure)

    def test_mismatch_names_fitted_constant(self):
        computed = math.exp(0.5 * math.log(1.2554338662666087))
        with pytest.raises(NormalizationMismatchError, match="fitted normalization constant 2") as exc_info:
            check_mahler_normalization(computed, 1.2554338662666087)
        assert exc_info.value.fitted_constant == pytest.approx(2.0)

    def test_no_fit_below_one(self):
        with pytest.raises(NormalizationMismatchError) as exc_info:
            check_mahler_normalization(1.0, 1.3)
        assert math.isnan(exc_info.value.fitted_constant)
