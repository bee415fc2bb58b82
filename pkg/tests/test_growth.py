import math

import pytest

from msetperm.core import PatternSet
from msetperm.errors import BudgetExceeded
from msetperm.formulas import generalized_catalan
from msetperm.growth import (
    check_stirling_identity,
    count_words_avoiding,
    growth_csv,
    growth_table,
    word_counterexample_probe,
    word_counts_by_length,
)

from reference import naive_word_count


class TestWordProbe:
    def test_single_letter_alphabet(self):
        for length in (1, 3, 7):
            assert word_counterexample_probe(length, 1) == 1

    def test_small_example(self):
        assert word_counterexample_probe(2, 3) == 6

    def test_exceeds_power_bound(self):
        count = word_counterexample_probe(3, 10)
        assert count == math.comb(12, 3) == 220
        assert count > (10 / 3) ** 3

    def test_matches_binomial_on_grid(self):
        for n in range(1, 9):
            counts = word_counts_by_length(n, 8, PatternSet.of("12"))
            for length in range(0, 9):
                assert counts[length] == math.comb(n + length - 1, length)

    def test_word_count_matches_reference(self):
        for pats in (("12",), ("123",), ("212",), ("112", "221")):
            ps = PatternSet.of(*pats)
            raw = [tuple(int(c) for c in p) for p in pats]
            for n, length in ((2, 4), (3, 3), (4, 2)):
                assert count_words_avoiding(n, length, ps) == \
                    naive_word_count(n, length, raw), (pats, n, length)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            count_words_avoiding(3, 25, PatternSet.of("12"))


class TestStirlingIdentity:
    def test_examples(self):
        assert check_stirling_identity(2, 2).equal
        assert check_stirling_identity(2, 2).formula == 3
        assert check_stirling_identity(1, 5).formula == 1
        verdict = check_stirling_identity(3, 2)
        assert verdict.equal and verdict.formula == 15

    def test_grid(self):
        for n, m in ((1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)):
            assert check_stirling_identity(n, m).equal


class TestGrowthTable:
    def test_super_exponential_family(self):
        rows = growth_table(PatternSet.of("212"), [(n, 2) for n in range(2, 6)])
        ratios = [r.ratio for r in rows]
        assert ratios == sorted(ratios) and ratios[0] < ratios[-1]
        assert [r.count for r in rows] == [3, 15, 105, 945]

    def test_formula_backed_family(self):
        rows = growth_table(PatternSet.of("122", "123"),
                            [(n, 3) for n in range(1, 5)])
        assert [r.count for r in rows] == \
            [generalized_catalan(n, 3) for n in range(1, 5)]

    def test_catalan_family_ratio_bounded(self):
        rows = growth_table(PatternSet.of("122", "123"),
                            [(n, 1) for n in range(1, 11)])
        assert all(r.ratio < 4.0 for r in rows)

    def test_single_ordinary_pattern_ratio_stays_bounded(self):
        # weak empirical probe: one ordinary forbidden pattern keeps the
        # count exponential in the length, so the ratio column plateaus
        for pat in ("123", "132", "321"):
            rows = growth_table(PatternSet.of(pat), [(n, 2) for n in range(1, 6)])
            assert all(r.ratio < 3.0 for r in rows), pat

    def test_unrestricted_ratio(self):
        rows = growth_table(PatternSet(()), [(3, 2)])
        count = math.factorial(6) // 8
        assert rows[0].count == count
        assert rows[0].ratio == pytest.approx(count ** (1 / 6))

    def test_zero_count_percolates(self):
        rows = growth_table(PatternSet.of("122", "211"), [(3, 2)])
        assert rows[0].count == 0 and rows[0].ratio == 0.0

    def test_csv_shape(self):
        rows = growth_table(PatternSet.of("212"), [(2, 2), (3, 2)])
        text = growth_csv(rows)
        lines = text.strip().splitlines()
        assert lines[0] == "n,m,count,ratio"
        assert lines[1].startswith("2,2,3,")
        assert len(lines) == 3
        # six decimal places in the display column
        assert len(lines[1].rsplit(".", 1)[1]) == 6
