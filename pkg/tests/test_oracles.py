"""
Tests for the generating-function oracles and the single-index family.

The two series oracles read coefficients off different expansions of the
defining generating function, so agreement with the explicit formula is an
independent check of all three.
"""

import itertools
from fractions import Fraction

import pytest

from multi_polybernoulli.polybernoulli import (
    classical_bernoulli,
    explicit_multi,
    oracle_ell_sum,
    oracle_li_sha,
    poly_bernoulli,
    single_index_multiple,
)


def _index_tuples(r: int, max_total: int):
    for m in itertools.product(range(max_total + 1), repeat=r):
        if sum(m) <= max_total:
            yield m


class TestOracleEllSum:
    """Test the l-expansion oracle."""

    def test_constant_term(self):
        assert oracle_ell_sum((0,), (5,)) == 1

    def test_classical_value(self):
        assert oracle_ell_sum((1,), (1,)) == Fraction(1, 2)

    def test_golden_double_value(self):
        assert oracle_ell_sum((1, 1), (-1, -1)) == 26

    def test_depth_one_matches_poly_bernoulli(self):
        for m in range(6):
            for k in range(-3, 4):
                assert oracle_ell_sum((m,), (k,)) == poly_bernoulli(m, k)


class TestOracleLiSha:
    """Test the direct Li-sha expansion oracle."""

    def test_trivial_value(self):
        assert oracle_li_sha((0, 0), (0, 0)) == 1

    def test_negative_weight_value(self):
        assert oracle_li_sha((1,), (-1,)) == 2

    def test_golden_double_value(self):
        assert oracle_li_sha((1, 1), (-1, -1)) == 26

    def test_classical_numbers(self):
        for m in range(7):
            assert oracle_li_sha((m,), (1,)) == classical_bernoulli(m)


class TestOracleAgreement:
    """explicit_multi = oracle_ell_sum = oracle_li_sha."""

    @pytest.mark.parametrize("r", [1, 2])
    def test_agreement_small_depth(self, r):
        for m in _index_tuples(r, 4):
            for k in itertools.product(range(-2, 3), repeat=r):
                expected = explicit_multi(m, k)
                assert oracle_ell_sum(m, k) == expected, (m, k)
                assert oracle_li_sha(m, k) == expected, (m, k)

    def test_agreement_depth_three_sample(self):
        for m in _index_tuples(3, 2):
            for k in itertools.product((-1, 0, 1), repeat=3):
                expected = explicit_multi(m, k)
                assert oracle_ell_sum(m, k) == expected, (m, k)
                assert oracle_li_sha(m, k) == expected, (m, k)

    @pytest.mark.slow
    def test_agreement_depth_three_full(self):
        for m in _index_tuples(3, 4):
            for k in itertools.product(range(-2, 3), repeat=3):
                expected = explicit_multi(m, k)
                assert oracle_ell_sum(m, k) == expected, (m, k)
                assert oracle_li_sha(m, k) == expected, (m, k)

    def test_triple_example_from_series(self):
        assert oracle_ell_sum((0, 0, 1), (-1, -1, -1)) == explicit_multi(
            (0, 0, 1), (-1, -1, -1)
        )


class TestSingleIndexMultiple:
    """Test B_n^(k_1,...,k_r) from the one-variable multiple polylogarithm."""

    def test_depth_one_reduces_to_poly_bernoulli(self):
        assert single_index_multiple(1, (-1,)) == 2
        for n in range(7):
            for k in range(-3, 4):
                assert single_index_multiple(n, (k,)) == poly_bernoulli(n, k)

    def test_constant_term(self):
        assert single_index_multiple(0, (0, 0)) == 1
        assert single_index_multiple(0, (0, 0)) == explicit_multi((0, 0), (0, 0))

    @pytest.mark.parametrize(
        "r,weights",
        [
            (2, range(-2, 3)),
            (3, (-1, 0, 1)),
            pytest.param(3, range(-2, 3), marks=pytest.mark.slow),
        ],
    )
    def test_equals_leading_zero_indices(self, r, weights):
        """B_n^(k) = B_(0,...,0,n)^(k)."""
        for n in range(5):
            for k in itertools.product(weights, repeat=r):
                m = (0,) * (r - 1) + (n,)
                assert single_index_multiple(n, k) == explicit_multi(m, k), (n, k)

    def test_invalid_input_raises(self):
        with pytest.raises(ValueError):
            single_index_multiple(-1, (1,))
        with pytest.raises(ValueError):
            single_index_multiple(2, ())
