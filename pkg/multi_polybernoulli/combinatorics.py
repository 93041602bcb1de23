"""
Exact integer and rational combinatorics.

Factorials, binomial and multinomial coefficients, Stirling numbers of the
second kind and composition enumeration. Every other module builds on these
primitives. Integers are Python ``int`` and rationals are
``fractions.Fraction``, which normalizes after every operation.
"""

import math
import threading
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from loguru import logger

Composition = Tuple[int, ...]


class CompositionMismatchError(ValueError):
    """Raised when the parts of a multinomial do not sum to its top index."""


class StirlingTable:
    """
    Memoized triangle of Stirling numbers of the second kind.

    Rows are grown on demand with the recurrence
    S(n + 1, l) = S(n, l - 1) + l * S(n, l), which needs no division.
    Growth is serialized by a lock so concurrent lookups are safe; rows
    already built are never mutated.
    """

    def __init__(self, max_n: int = 0):
        self._rows: List[Tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()
        if max_n > 0:
            self.ensure(max_n)

    @property
    def max_n(self) -> int:
        """Largest n whose row is available."""
        return len(self._rows) - 1

    def ensure(self, n: int) -> None:
        """Grow the triangle so that row ``n`` exists."""
        if n <= self.max_n:
            return

        with self._lock:
            start = self.max_n
            while len(self._rows) <= n:
                prev = self._rows[-1]
                size = len(prev)
                row = [0] * (size + 1)
                for ell in range(1, size + 1):
                    left = prev[ell - 1]
                    right = prev[ell] if ell < size else 0
                    row[ell] = left + ell * right
                self._rows.append(tuple(row))
            if self.max_n > start:
                logger.debug(f"Stirling table grown from n={start} to n={self.max_n}")

    def lookup(self, n: int, ell: int) -> int:
        """Return S(n, ell); zero outside 0 <= ell <= n."""
        if n < 0 or ell < 0 or ell > n:
            return 0
        if n > self.max_n:
            self.ensure(n)
        return self._rows[n][ell]

    def row(self, n: int) -> Tuple[int, ...]:
        """Return the full row (S(n, 0), ..., S(n, n))."""
        if n < 0:
            return ()
        self.ensure(n)
        return self._rows[n]


_shared_table = StirlingTable()


def stirling2(n: int, ell: int) -> int:
    """Stirling number of the second kind from the shared memoized table."""
    return _shared_table.lookup(n, ell)


def stirling2_closed(n: int, ell: int) -> int:
    """
    Stirling number of the second kind by inclusion-exclusion.

    Evaluates (-1)^ell / ell! * sum_i (-1)^i C(ell, i) i^n. Only used as an
    independent cross-check of :func:`stirling2`.
    """
    if n < 0 or ell < 0:
        return 0
    total = sum((-1) ** i * math.comb(ell, i) * i**n for i in range(ell + 1))
    value = Fraction((-1) ** ell * total, math.factorial(ell))
    # The sum is always divisible by ell!
    assert value.denominator == 1
    return value.numerator


def bell_number(n: int) -> int:
    """Sum of row ``n`` of the Stirling triangle."""
    return sum(_shared_table.row(n))


def factorial(n: int) -> int:
    """n! for n >= 0."""
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero when k < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """
    Multinomial coefficient n! / (p_1! ... p_s!).

    Raises:
        CompositionMismatchError: if the parts do not sum to ``n``
    """
    if sum(parts) != n or any(p < 0 for p in parts):
        raise CompositionMismatchError(
            f"parts {tuple(parts)} do not form a composition of {n}"
        )
    result = 1
    running = 0
    for part in parts:
        running += part
        result *= math.comb(running, part)
    return result


def compositions(total: int, parts: int) -> Iterator[Composition]:
    """
    Yield every tuple of ``parts`` non-negative integers summing to ``total``.

    Tuples come out in lexicographic order.
    """
    if parts < 1:
        raise ValueError(f"parts must be positive (got: {parts})")
    if total < 0:
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def rational_int_pow(base: int, exp: int) -> Fraction:
    """base**exp as an exact rational; negative exponents give unit fractions."""
    if base < 1:
        raise ValueError(f"base must be positive (got: {base})")
    if exp >= 0:
        return Fraction(base**exp)
    return Fraction(1, base ** (-exp))


def is_normalized(value: Fraction) -> bool:
    """Audit hook: positive denominator and coprime numerator/denominator."""
    return value.denominator > 0 and math.gcd(value.numerator, value.denominator) == 1
