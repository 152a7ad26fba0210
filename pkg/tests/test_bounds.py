from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from densevc.approx import guarantee
from densevc.bounds import (
    Bracket,
    bound_point,
    cksv_guarantee,
    conjecture_factor,
    conjecture_thresholds,
    gap_table,
    np_factor,
    np_thresholds,
    root_bracket,
    ugc_factor,
    ugc_thresholds,
)

GRID = [Fraction(i, 10) for i in range(1, 10)]
open_eps = st.fractions(min_value=0, max_value=1, max_denominator=50).filter(lambda e: 0 < e < 1)


def padded_ratio(thresholds, k, eps):
    """Gap ratio after padding a balanced gap instance to density eps.

    Padding adds eps/(1-eps) * n/k vertices to every part and raises every
    cover size by that amount, so a cover-fraction gap (high, low) of the
    source becomes (high (1-eps) + eps/k) / (low (1-eps) + eps/k).
    """
    high, low = thresholds
    eps = Fraction(eps)
    return (high * (1 - eps) + eps / k) / (low * (1 - eps) + eps / k)


class TestFactors:
    def test_ugc_examples(self):
        assert ugc_factor(3, 0) == Fraction(3, 2)
        assert ugc_factor(4, Fraction(1, 2)) == Fraction(5, 4)
        for k in range(3, 9):
            assert ugc_factor(k, 1) == 1

    def test_conjecture_examples(self):
        assert conjecture_factor(3, Fraction(1, 2)) == Fraction(6, 5)
        assert conjecture_factor(5, Fraction(1, 3)) == Fraction(5, 3)

    def test_np_examples(self):
        assert np_factor(4, 0) == Fraction(8, 5)
        assert np_factor(4, 1) == 1
        assert np_factor(4, Fraction(1, 2)) == Fraction(21, 20)

    def test_domains(self):
        with pytest.raises(ValueError):
            ugc_factor(2, Fraction(1, 2))
        with pytest.raises(ValueError):
            np_factor(3, Fraction(1, 2))
        with pytest.raises(ValueError):
            conjecture_factor(3, Fraction(-1, 2))

    @given(st.integers(3, 12), open_eps)
    def test_ugc_from_thresholds(self, k, eps):
        assert ugc_factor(k, eps) == padded_ratio(ugc_thresholds(k), k, eps)

    @given(st.integers(3, 12), open_eps)
    def test_conjecture_from_thresholds(self, k, eps):
        assert conjecture_factor(k, eps) == padded_ratio(conjecture_thresholds(k), k, eps)
        assert conjecture_factor(k, eps) == guarantee(k, eps)

    @given(st.integers(4, 12), open_eps)
    def test_np_from_thresholds(self, k, eps):
        assert np_factor(k, eps) == padded_ratio(np_thresholds(k), k, eps)

    def test_threshold_ratios_at_zero(self):
        for k in range(4, 9):
            hi, lo = np_thresholds(k)
            assert hi / lo == Fraction(k * k, 2 * (k + 1))
            hi, lo = ugc_thresholds(k)
            assert hi / lo == Fraction(k, 2)


class TestRoots:
    def test_exact(self):
        assert root_bracket(Fraction(1, 8), 3) == Bracket(Fraction(1, 2), Fraction(1, 2))
        assert root_bracket(Fraction(0), 2).exact

    @given(st.fractions(min_value=0, max_value=1, max_denominator=1000), st.integers(1, 8))
    def test_encloses(self, x, n):
        b = root_bracket(x, n)
        assert b.lo ** n <= x <= b.hi ** n
        assert b.hi - b.lo < Fraction(1, 10**12)

    def test_cksv_examples(self):
        b = cksv_guarantee(4, 1, Fraction(7, 8))
        assert b.exact and b.lo == Fraction(4, 3)
        for k in range(3, 8):
            for ell in range(1, k):
                assert cksv_guarantee(k, ell, 0).lo == Fraction(k, 2)

    def test_cksv_float(self):
        for k in (3, 5, 8):
            for ell in range(1, k):
                eps = Fraction(3, 10)
                value = k / (k - (k - 2) * (1 - float(eps)) ** (1 / (k - ell)))
                assert cksv_guarantee(k, ell, eps).value == pytest.approx(value, rel=1e-11)

    def test_cksv_domain(self):
        with pytest.raises(ValueError):
            cksv_guarantee(4, 4, Fraction(1, 2))


class TestTable:
    def test_grid_dominance(self):
        rows = gap_table(range(3, 11), GRID)
        assert len(rows) == 8 * 9
        assert all(r.dominance_ok for r in rows)
        assert all((r.np is None) == (r.k == 3) for r in rows)

    def test_checks_present(self):
        p = bound_point(5, Fraction(1, 2))
        assert set(p.checks) >= {"ugc_le_conjecture", "conjecture_eq_guarantee", "np_le_ugc",
                                 "cksv_4_matches", "cksv_1_worse", "cksv_3_worse"}

    def test_ell_grid_filters(self):
        p = bound_point(3, Fraction(1, 2), [1, 5])
        assert set(p.cksv) == {1}

    def test_strict_gap_below_one(self):
        for r in gap_table(range(3, 11), GRID):
            assert r.conjecture - r.ugc > 0
