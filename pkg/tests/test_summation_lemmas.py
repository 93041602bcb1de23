"""
Property tests for the summation-interchange identities used by the
explicit formula, over random finitely supported functions.
"""

import itertools
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from multi_polybernoulli.combinatorics import compositions

SUPPORT = 6


@st.composite
def finite_functions(draw):
    """(r, f) with f a dict on (r+1)-tuples with entries < SUPPORT."""
    r = draw(st.integers(min_value=1, max_value=3))
    keys = st.tuples(*[st.integers(min_value=0, max_value=SUPPORT - 1)] * (r + 1))
    values = st.fractions(min_value=-10, max_value=10, max_denominator=12)
    f = draw(st.dictionaries(keys, values, max_size=25))
    return r, f


def _nested_triangle(r: int, f: dict) -> Fraction:
    """sum_{n0} sum_{n1 <= n0} sum_{n2 <= n0 - n1} ... f(n0, n1, ..., nr)."""
    total = Fraction(0)

    def walk(prefix, remaining):
        nonlocal total
        if len(prefix) == r + 1:
            total += f.get(tuple(prefix), 0)
            return
        for n in range(remaining + 1):
            walk(prefix + [n], remaining - n)

    for n0 in range(SUPPORT):
        walk([n0], n0)
    return total


def _shifted_sum(r: int, f: dict) -> Fraction:
    """sum over n1..nr, n0 of f(n0 + n1 + ... + nr, n1, ..., nr)."""
    total = Fraction(0)
    for rest in itertools.product(range(SUPPORT), repeat=r):
        for n0 in range(SUPPORT):
            total += f.get((n0 + sum(rest),) + rest, 0)
    return total


class TestSummationInterchange:
    """Left and right sides agree for every finitely supported f."""

    @settings(max_examples=100)
    @given(finite_functions())
    def test_triangle_equals_shifted_sum(self, data):
        r, f = data
        assert _nested_triangle(r, f) == _shifted_sum(r, f)

    @settings(max_examples=100)
    @given(finite_functions(), st.integers(min_value=0, max_value=SUPPORT))
    def test_split_equals_full_composition(self, data, k):
        r, f = data
        left = sum(
            (
                f.get((n0,) + rest, 0)
                for n0 in range(k + 1)
                for rest in compositions(k - n0, r)
            ),
            Fraction(0),
        )
        right = sum((f.get(c, 0) for c in compositions(k, r + 1)), Fraction(0))
        assert left == right
