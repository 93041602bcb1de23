"""
Tests for duality_check and the closed-form generating function.
"""

import itertools
from fractions import Fraction

import pytest

from multi_polybernoulli.formal_series import coefficient
from multi_polybernoulli.polybernoulli import (
    DualityResult,
    IndexMismatchError,
    duality_check,
    explicit_multi,
    genfunc_closed,
    genfunc_coefficients,
    verify_genfunc,
)


class TestDualityCheck:
    """B_m^(-k) = B_k^(-m)."""

    def test_symmetric_case(self):
        assert duality_check((1, 1), (1, 1)) == DualityResult(True, Fraction(26), Fraction(26))

    def test_swapped_case(self):
        assert duality_check((1, 0), (0, 1)) == DualityResult(True, Fraction(3), Fraction(3))

    def test_trivial_case(self):
        assert duality_check((0,), (0,)) == DualityResult(True, Fraction(1), Fraction(1))

    def test_depth_two_grid(self):
        grid = list(itertools.product(range(4), repeat=2))
        for m in grid:
            for k in grid:
                assert duality_check(m, k).holds, (m, k)

    def test_depth_three_grid(self):
        grid = list(itertools.product(range(3), repeat=3))
        for m in grid:
            for k in grid:
                assert duality_check(m, k).holds, (m, k)

    @pytest.mark.slow
    def test_depth_three_full_grid(self):
        grid = list(itertools.product(range(4), repeat=3))
        for m in grid:
            for k in grid:
                assert duality_check(m, k).holds, (m, k)

    def test_values_are_positive_integers(self):
        """Negative-weight numbers count combinatorial objects."""
        for m in itertools.product(range(3), repeat=2):
            value = explicit_multi(m, (-1, -2))
            assert value.denominator == 1
            assert value > 0

    def test_negative_entries_raise(self):
        with pytest.raises(IndexMismatchError):
            duality_check((1,), (-1,))
        with pytest.raises(IndexMismatchError):
            duality_check((1, 2), (1,))


class TestGeneratingFunction:
    """Coefficients of the closed form are B_m^(-k) / (prod m! prod k!)."""

    def test_depth_one_coefficients(self):
        series = genfunc_closed(1, 2)
        assert series.num_vars == 2
        assert coefficient(series, (0, 0)) == 1
        assert coefficient(series, (1, 1)) == 2

    def test_depth_two_golden_value(self):
        series = genfunc_closed(2, 4)
        assert coefficient(series, (1, 1, 1, 1)) == 26

    def test_symmetric_in_x_and_y(self):
        """Swapping x and y gives the same series (duality)."""
        series = genfunc_closed(2, 4)
        for exponent, value in series.terms():
            swapped = exponent[2:] + exponent[:2]
            assert coefficient(series, swapped) == value

    def test_zero_truncation(self):
        assert verify_genfunc(1, 0) == []
        assert len(list(genfunc_coefficients(1, 0))) == 1

    def test_depth_one(self):
        assert verify_genfunc(1, 6) == []

    def test_depth_two(self):
        assert verify_genfunc(2, 5) == []

    @pytest.mark.slow
    def test_larger_degrees(self):
        assert verify_genfunc(1, 8) == []
        assert verify_genfunc(2, 6) == []

    def test_invalid_depth_raises(self):
        with pytest.raises(IndexMismatchError):
            genfunc_closed(0, 3)
