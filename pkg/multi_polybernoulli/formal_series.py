"""
Sparse truncated multivariate formal power series over the rationals.

A :class:`MultiSeries` holds the coefficients of monomials t_1^e_1 ... t_v^e_v
whose total degree is at most the truncation bound N. Values are immutable;
every operation returns a new series. Coefficients above N are unknown, not
zero, so querying them is an error.
"""

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from .utils import rational_from_json, rational_to_json

Exponent = Tuple[int, ...]
LinearForm = Tuple[Fraction, ...]
Number = Union[int, Fraction]


class SeriesShapeError(ValueError):
    """Raised when two series disagree on variable count or truncation."""


class TruncationError(ValueError):
    """Raised when a coefficient above the truncation bound is requested."""


class InvertibilityError(ArithmeticError):
    """Raised when inverting a series whose constant term is not 1."""


class DivisibilityError(ArithmeticError):
    """Raised when exact division by a linear form leaves a remainder."""


def _graded_key(exponent: Exponent) -> Tuple[int, Exponent]:
    return (sum(exponent), exponent)


class MultiSeries:
    """Truncated power series in ``num_vars`` variables up to total degree ``truncation``."""

    __slots__ = ("num_vars", "truncation", "_terms")

    def __init__(self, num_vars: int, truncation: int, terms: Mapping[Exponent, Number] = None):
        if num_vars < 1:
            raise SeriesShapeError(f"num_vars must be positive (got: {num_vars})")
        if truncation < 0:
            raise SeriesShapeError(f"truncation must be non-negative (got: {truncation})")
        self.num_vars = num_vars
        self.truncation = truncation
        cleaned: Dict[Exponent, Fraction] = {}
        for exponent, value in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != num_vars or any(e < 0 for e in exponent):
                raise SeriesShapeError(
                    f"exponent {exponent} does not fit {num_vars} variables"
                )
            if value == 0 or sum(exponent) > truncation:
                continue
            cleaned[exponent] = Fraction(value)
        self._terms = cleaned

    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Non-zero terms in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: _graded_key(item[0]))

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.truncation == other.truncation
            and self._terms == other._terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"MultiSeries(vars={self.num_vars}, trunc={self.truncation}, "
            f"terms={dict(self.terms())!r})"
        )

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        return series_add(self, other)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return series_sub(self, other)

    def __neg__(self) -> "MultiSeries":
        return series_neg(self)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        return series_mul(self, other)

    def __pow__(self, exponent: int) -> "MultiSeries":
        return series_pow(self, exponent)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return coefficient(self, exponent)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def series_zero(num_vars: int, truncation: int) -> MultiSeries:
    return MultiSeries(num_vars, truncation)


def series_one(num_vars: int, truncation: int) -> MultiSeries:
    return MultiSeries(num_vars, truncation, {(0,) * num_vars: 1})


def series_var(num_vars: int, truncation: int, index: int) -> MultiSeries:
    """The monomial t_index (1-based)."""
    if not 1 <= index <= num_vars:
        raise SeriesShapeError(f"variable index {index} outside 1..{num_vars}")
    exponent = tuple(1 if i == index - 1 else 0 for i in range(num_vars))
    return MultiSeries(num_vars, truncation, {exponent: 1})


def series_from_terms(
    num_vars: int, truncation: int, mapping: Mapping[Exponent, Number]
) -> MultiSeries:
    """Build a series from an exponent map; zeros and terms above N are dropped."""
    return MultiSeries(num_vars, truncation, mapping)


def linear_form(coefficients: Iterable[Number]) -> LinearForm:
    return tuple(Fraction(c) for c in coefficients)


def _linear_series(num_vars: int, truncation: int, form: Sequence[Number]) -> MultiSeries:
    if len(form) != num_vars:
        raise SeriesShapeError(
            f"linear form of length {len(form)} used with {num_vars} variables"
        )
    terms = {}
    for i, c in enumerate(form):
        if c:
            terms[tuple(1 if j == i else 0 for j in range(num_vars))] = c
    return MultiSeries(num_vars, truncation, terms)


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------


def _check_shape(a: MultiSeries, b: MultiSeries) -> None:
    if a.num_vars != b.num_vars or a.truncation != b.truncation:
        raise SeriesShapeError(
            f"series shapes differ: (vars={a.num_vars}, trunc={a.truncation}) "
            f"vs (vars={b.num_vars}, trunc={b.truncation})"
        )


def series_add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    _check_shape(a, b)
    result = dict(a._terms)
    for exponent, value in b._terms.items():
        result[exponent] = result.get(exponent, 0) + value
    return MultiSeries(a.num_vars, a.truncation, result)


def series_neg(a: MultiSeries) -> MultiSeries:
    return MultiSeries(a.num_vars, a.truncation, {e: -c for e, c in a._terms.items()})


def series_sub(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return series_add(a, series_neg(b))


def series_scale(a: MultiSeries, c: Number) -> MultiSeries:
    if c == 0:
        return series_zero(a.num_vars, a.truncation)
    c = Fraction(c)
    return MultiSeries(a.num_vars, a.truncation, {e: v * c for e, v in a._terms.items()})


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Product truncated to total degree N."""
    _check_shape(a, b)
    bound = a.truncation
    right = sorted(
        ((sum(e), e, v) for e, v in b._terms.items()), key=lambda item: item[0]
    )
    result: Dict[Exponent, Fraction] = {}
    for e1, v1 in a._terms.items():
        d1 = sum(e1)
        for d2, e2, v2 in right:
            if d1 + d2 > bound:
                break
            exponent = tuple(x + y for x, y in zip(e1, e2))
            result[exponent] = result.get(exponent, 0) + v1 * v2
    return MultiSeries(a.num_vars, bound, result)


def series_pow(a: MultiSeries, exponent: int) -> MultiSeries:
    """a**exponent by binary exponentiation; a**0 is the constant 1."""
    if exponent < 0:
        raise ValueError(f"exponent must be non-negative (got: {exponent})")
    result = series_one(a.num_vars, a.truncation)
    base = a
    while exponent:
        if exponent & 1:
            result = series_mul(result, base)
        exponent >>= 1
        if exponent:
            base = series_mul(base, base)
    return result


def series_exp_linear(num_vars: int, truncation: int, form: Sequence[Number]) -> MultiSeries:
    """exp(c_1 t_1 + ... + c_v t_v) truncated to total degree N."""
    lin = _linear_series(num_vars, truncation, form)
    total = series_one(num_vars, truncation)
    power = total
    for d in range(1, truncation + 1):
        power = series_scale(series_mul(power, lin), Fraction(1, d))
        if not len(power):
            break
        total = series_add(total, power)
    return total


def series_from_univariate(
    num_vars: int, truncation: int, coeffs: Sequence[Number], form: Sequence[Number]
) -> MultiSeries:
    """sum_d coeffs[d] * (L . t)^d for d <= N."""
    lin = _linear_series(num_vars, truncation, form)
    total = series_zero(num_vars, truncation)
    power = series_one(num_vars, truncation)
    for d, c in enumerate(coeffs):
        if d > truncation:
            break
        if c:
            total = series_add(total, series_scale(power, c))
        power = series_mul(power, lin)
    return total


def monomials(num_vars: int, truncation: int) -> List[Exponent]:
    """All exponents of total degree <= N, graded lexicographic."""
    out: List[Exponent] = []

    def build(prefix: Tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 0:
            out.append(prefix)
            return
        for e in range(remaining + 1):
            build(prefix + (e,), remaining - e, slots - 1)

    build((), truncation, num_vars)
    out.sort(key=_graded_key)
    return out


def series_inverse(a: MultiSeries) -> MultiSeries:
    """
    Multiplicative inverse of a series with constant term 1.

    Coefficients are solved degree by degree from a * b = 1.

    Raises:
        InvertibilityError: if the constant term is not exactly 1
    """
    zero = (0,) * a.num_vars
    constant = a._terms.get(zero, Fraction(0))
    if constant != 1:
        raise InvertibilityError(
            f"series inverse needs constant term 1 (got: {constant})"
        )
    tail = [(e, c) for e, c in a._terms.items() if e != zero]
    inverse: Dict[Exponent, Fraction] = {}
    for exponent in monomials(a.num_vars, a.truncation):
        acc = Fraction(1) if exponent == zero else Fraction(0)
        for f, c in tail:
            rest = tuple(x - y for x, y in zip(exponent, f))
            if min(rest) < 0:
                continue
            prev = inverse.get(rest)
            if prev:
                acc -= c * prev
        if acc:
            inverse[exponent] = acc
    return MultiSeries(a.num_vars, a.truncation, inverse)


def series_divide_linear(a: MultiSeries, form: Sequence[Number]) -> MultiSeries:
    """
    Exact quotient of ``a`` by the homogeneous linear form L . t.

    The input truncated at N is exactly (quotient truncated at N - 1) * L, so
    the result carries truncation N - 1.

    Raises:
        DivisibilityError: if L does not divide ``a``
    """
    form = linear_form(form)
    if len(form) != a.num_vars:
        raise SeriesShapeError(
            f"linear form of length {len(form)} used with {a.num_vars} variables"
        )
    if a.truncation < 1:
        raise SeriesShapeError("division by a linear form needs truncation >= 1")
    nonzero = [i for i, c in enumerate(form) if c]
    if not nonzero:
        raise DivisibilityError("division by the zero linear form")

    pivot = nonzero[-1]
    lead = form[pivot]
    others = [(i, form[i]) for i in nonzero if i != pivot]

    # Slice a by the pivot exponent; each slice is a map over the pivot-free exponents.
    slices: Dict[int, Dict[Exponent, Fraction]] = {}
    for exponent, value in a._terms.items():
        key = exponent[:pivot] + (0,) + exponent[pivot + 1 :]
        slices.setdefault(exponent[pivot], {})[key] = value

    def times_others(poly: Dict[Exponent, Fraction]) -> Dict[Exponent, Fraction]:
        out: Dict[Exponent, Fraction] = {}
        for exponent, value in poly.items():
            for i, c in others:
                shifted = exponent[:i] + (exponent[i] + 1,) + exponent[i + 1 :]
                out[shifted] = out.get(shifted, 0) + c * value
        return out

    quotient: Dict[Exponent, Fraction] = {}
    top = max(slices) if slices else 0
    current: Dict[Exponent, Fraction] = {}
    for level in range(top, 0, -1):
        remainder = dict(slices.get(level, {}))
        for exponent, value in times_others(current).items():
            remainder[exponent] = remainder.get(exponent, 0) - value
        current = {e: v / lead for e, v in remainder.items() if v}
        for exponent, value in current.items():
            full = exponent[:pivot] + (level - 1,) + exponent[pivot + 1 :]
            quotient[full] = value

    leftover = dict(slices.get(0, {}))
    for exponent, value in times_others(current).items():
        leftover[exponent] = leftover.get(exponent, 0) - value
    if any(leftover.values()):
        raise DivisibilityError("series is not divisible by the linear form")

    return MultiSeries(a.num_vars, a.truncation - 1, quotient)


def coefficient(a: MultiSeries, exponent: Sequence[int]) -> Fraction:
    """
    Coefficient of t^exponent.

    Raises:
        TruncationError: if the exponent's total degree exceeds the truncation
    """
    exponent = tuple(exponent)
    if len(exponent) != a.num_vars:
        raise SeriesShapeError(
            f"exponent {exponent} does not fit {a.num_vars} variables"
        )
    if sum(exponent) > a.truncation:
        raise TruncationError(
            f"coefficient at {exponent} is above truncation {a.truncation}"
        )
    return a._terms.get(exponent, Fraction(0))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def series_to_json(a: MultiSeries) -> dict:
    """JSON object with terms in graded lexicographic order and decimal-string integers."""
    return {
        "vars": a.num_vars,
        "trunc": a.truncation,
        "terms": [{"e": list(e), **rational_to_json(c)} for e, c in a.terms()],
    }


def series_from_json(payload: Mapping) -> MultiSeries:
    terms = {
        tuple(int(x) for x in term["e"]): rational_from_json(term)
        for term in payload["terms"]
    }
    return MultiSeries(int(payload["vars"]), int(payload["trunc"]), terms)


def exp_minus_one_over_t(truncation: int) -> List[Fraction]:
    """Coefficients of (1 - e^{-u}) / u, i.e. (-1)^d / (d + 1)!."""
    return [Fraction((-1) ** d, math.factorial(d + 1)) for d in range(truncation + 1)]
