from fractions import Fraction

import pytest

from closed_forms import kirchhoff_index, spanning_tree_count
from published_tables import (
    KIRCHHOFF_TABLE_DEVIATIONS,
    PUBLISHED_COMPLEXITY,
    PUBLISHED_KIRCHHOFF,
    classify_kirchhoff_deviation,
    complexity_matches_published,
    kirchhoff_matches_published,
    kirchhoff_table_deviation,
    published_complexity,
    published_kirchhoff,
    round_significant,
    truncate_decimal,
)


class TestRoundSignificant:
    def test_short_values_untouched(self):
        assert round_significant(45) == 45
        assert round_significant(973080) == 973080

    def test_rounding(self):
        assert round_significant(27106512) == 27106500
        assert round_significant(21034094400) == 21034100000
        assert round_significant(1234565) == 1234560
        assert round_significant(1234575) == 1234580


class TestPublishedTables:
    def test_coverage(self):
        assert sorted(PUBLISHED_KIRCHHOFF) == list(range(1, 51))
        assert sorted(PUBLISHED_COMPLEXITY) == list(range(1, 13))

    def test_lookup(self):
        assert published_kirchhoff(1) == "79.25"
        assert published_complexity(3) == 34932
        assert published_kirchhoff(51) is None
        assert published_complexity(13) is None

    @pytest.mark.parametrize("n", [n for n in range(1, 51) if n not in KIRCHHOFF_TABLE_DEVIATIONS])
    def test_kirchhoff_closed_form_reproduces_table(self, n):
        assert kirchhoff_matches_published(n, kirchhoff_index(n))

    def test_kirchhoff_deviating_rows(self):
        found = {}
        for n in range(1, 51):
            reason = classify_kirchhoff_deviation(n, kirchhoff_index(n))
            if reason is not None:
                found[n] = reason
        assert found == KIRCHHOFF_TABLE_DEVIATIONS == {35: "typo", 37: "truncated", 38: "truncated"}

    def test_kirchhoff_deviation_values(self):
        assert kirchhoff_matches_published(35, kirchhoff_index(35)) is False
        assert truncate_decimal(kirchhoff_index(37)) == "1426103.39"
        assert truncate_decimal(kirchhoff_index(38)) == "1543210.96"
        assert kirchhoff_table_deviation(36) is None
        assert kirchhoff_table_deviation(37) == "truncated"

    @pytest.mark.parametrize("n", range(1, 13))
    def test_complexity_closed_form_reproduces_table(self, n):
        assert complexity_matches_published(n, spanning_tree_count(n))

    def test_small_complexity_entries_are_exact(self):
        for n in range(1, 5):
            assert spanning_tree_count(n) == published_complexity(n)

    def test_out_of_table(self):
        assert kirchhoff_matches_published(60, kirchhoff_index(60)) is None
        assert complexity_matches_published(13, spanning_tree_count(13)) is None


class TestTruncateDecimal:
    def test_truncates(self):
        assert truncate_decimal(Fraction(12399, 1000)) == "12.39"
        assert truncate_decimal(Fraction(5, 100)) == "0.05"
        assert truncate_decimal(Fraction(7)) == "7.00"
