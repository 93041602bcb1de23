"""
Multi-indexed poly-Bernoulli numbers.

Exact evaluators for B_{m_1,...,m_r}^{(k_1,...,k_r)}:

- ``explicit_multi``: the general Stirling-number formula
- ``double_index_formula``, ``triple_index_formula_a``, ``triple_index_formula_b``:
  the r = 2 and r = 3 specializations
- ``oracle_ell_sum`` and ``oracle_li_sha``: coefficient extraction from two
  expansions of the defining generating function
- ``single_index_multiple``: the single-index family built from the
  one-variable multiple polylogarithm

Everything is exact over ``fractions.Fraction``. Inputs are small
(desk-scale), so the evaluators favour memoized enumeration over cleverness.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from loguru import logger

from .combinatorics import (
    binomial,
    compositions,
    factorial,
    multinomial,
    rational_int_pow,
    stirling2,
)
from .formal_series import (
    MultiSeries,
    coefficient,
    exp_minus_one_over_t,
    monomials,
    series_divide_linear,
    series_exp_linear,
    series_from_univariate,
    series_inverse,
    series_mul,
    series_one,
    series_pow,
    series_sub,
)
from .utils import rational_to_json

IndexTuple = Tuple[int, ...]
WeightTuple = Tuple[int, ...]
InnerIndexMatrix = Tuple[Tuple[int, ...], ...]

METHODS = ("explicit", "double", "triple-a", "triple-b", "oracle-ell", "oracle-li")


class IndexMismatchError(ValueError):
    """Raised when index and weight tuples are empty, differ in length, or hold a negative index."""


class UnknownMethodError(ValueError):
    """Raised when the façade receives an evaluator tag it does not know."""


@dataclass(frozen=True)
class PolyBernoulliRecord:
    """One computed value together with the evaluator that produced it."""

    r: int
    m: IndexTuple
    k: WeightTuple
    value: Fraction
    method: str

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "m": list(self.m),
            "k": list(self.k),
            "method": self.method,
            "value": rational_to_json(self.value),
        }


class DualityResult(NamedTuple):
    holds: bool
    lhs: Fraction
    rhs: Fraction


class GenfuncMismatch(NamedTuple):
    m: IndexTuple
    k: IndexTuple
    lhs: Fraction
    rhs: Fraction


def _validate(m: Sequence[int], k: Sequence[int]) -> Tuple[IndexTuple, WeightTuple]:
    m = tuple(int(x) for x in m)
    k = tuple(int(x) for x in k)
    if not m:
        raise IndexMismatchError("index tuple must have at least one entry")
    if len(m) != len(k):
        raise IndexMismatchError(
            f"index tuple {m} and weight tuple {k} differ in length"
        )
    if any(x < 0 for x in m):
        raise IndexMismatchError(f"index entries must be non-negative (got: {m})")
    return m, k


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# Single-index numbers
# ---------------------------------------------------------------------------


def poly_bernoulli(m: int, k: int) -> Fraction:
    """Kaneko's poly-Bernoulli number B_m^{(k)} from its Stirling-number formula."""
    if m < 0:
        raise IndexMismatchError(f"index must be non-negative (got: {m})")
    total = Fraction(0)
    for ell in range(m + 1):
        s = stirling2(m, ell)
        if not s:
            continue
        total += _sign(ell) * factorial(ell) * s * rational_int_pow(ell + 1, -k)
    return _sign(m) * total


def classical_bernoulli(m: int) -> Fraction:
    """Bernoulli number with generating function t e^t / (e^t - 1), so B_1 = +1/2."""
    return poly_bernoulli(m, 1)


def classical_bernoulli_series(degree: int) -> List[Fraction]:
    """
    B_0, ..., B_degree read off the series t e^t / (e^t - 1).

    Computed as e^t times the inverse of (e^t - 1) / t, independent of the
    Stirling-number route used by :func:`classical_bernoulli`.
    """
    exp_t = series_exp_linear(1, degree, (1,))
    shifted = series_from_univariate(
        1, degree, [Fraction(1, factorial(d + 1)) for d in range(degree + 1)], (1,)
    )
    generating = series_mul(exp_t, series_inverse(shifted))
    return [coefficient(generating, (d,)) * factorial(d) for d in range(degree + 1)]


# ---------------------------------------------------------------------------
# General explicit formula
# ---------------------------------------------------------------------------


def inner_index_matrices(m: Sequence[int]) -> Iterator[InnerIndexMatrix]:
    """
    Yield every inner index matrix for ``m``.

    Row i (1-based, i < r) is a composition of m_{i+1} into i + 1 parts.
    For r = 1 there is exactly one, empty, matrix.
    """
    rows = [list(compositions(m[i], i + 1)) for i in range(1, len(m))]
    for matrix in itertools.product(*rows):
        yield tuple(matrix)


def stirling_arguments(m: Sequence[int], matrix: InnerIndexMatrix) -> IndexTuple:
    """
    Upper Stirling arguments a_j for one inner index matrix.

    a_j = m_j - (n_{j-1,1} + ... + n_{j-1,j-1}) + (n_{j,j} + ... + n_{r-1,j}).
    Since row j - 1 sums to m_j this equals n_{j-1,j} plus a sum of entries,
    so every a_j is non-negative.
    """
    r = len(m)
    args = []
    for j in range(1, r + 1):
        value = m[j - 1]
        if j >= 2:
            value -= sum(matrix[j - 2][: j - 1])
        for i in range(j, r):
            value += matrix[i - 1][j - 1]
        assert value >= 0, f"negative Stirling argument {value} for m={tuple(m)}"
        args.append(value)
    return tuple(args)


@lru_cache(maxsize=None)
def _inner_weights(m: IndexTuple) -> Tuple[Tuple[IndexTuple, int], ...]:
    """Inner sum aggregated by Stirling argument vector."""
    weights: Dict[IndexTuple, int] = {}
    for matrix in inner_index_matrices(m):
        coeff = 1
        for i, row in enumerate(matrix, start=1):
            coeff *= multinomial(m[i], row)
        args = stirling_arguments(m, matrix)
        weights[args] = weights.get(args, 0) + coeff
    return tuple(sorted(weights.items()))


@lru_cache(maxsize=None)
def _weighted_stirling_sum(args: IndexTuple, k: WeightTuple, bound: int) -> Fraction:
    """
    Sum over l in {0..bound}^r of
    (-1)^{sum l} prod l_j! S(a_j, l_j) prod (l_1 + ... + l_j + j)^{-k_j}.
    """
    r = len(args)

    def walk(j: int, prefix: int) -> Fraction:
        if j == r:
            return Fraction(1)
        total = Fraction(0)
        for ell in range(bound + 1):
            s = stirling2(args[j], ell)
            if not s:
                continue
            weight = rational_int_pow(prefix + ell + j + 1, -k[j])
            total += _sign(ell) * factorial(ell) * s * weight * walk(j + 1, prefix + ell)
        return total

    return walk(0, 0)


def explicit_multi(
    m: Sequence[int], k: Sequence[int], ell_bound: Optional[int] = None
) -> Fraction:
    """
    Evaluate B_m^{(k)} with the general explicit formula.

    Args:
        m: index tuple, entries >= 0
        k: weight tuple of the same length
        ell_bound: upper bound of every outer l_j; defaults to sum(m). Larger
            bounds add only vanishing terms.

    Raises:
        IndexMismatchError: on empty, mismatched or negative input
    """
    m, k = _validate(m, k)
    bound = sum(m) if ell_bound is None else ell_bound
    if bound < 0:
        raise ValueError(f"ell_bound must be non-negative (got: {bound})")
    return _explicit_cached(m, k, bound)


@lru_cache(maxsize=None)
def _explicit_cached(m: IndexTuple, k: WeightTuple, bound: int) -> Fraction:
    total = Fraction(0)
    for args, weight in _inner_weights(m):
        total += weight * _weighted_stirling_sum(args, k, bound)
    return _sign(sum(m)) * total


# ---------------------------------------------------------------------------
# r = 2 and r = 3 specializations
# ---------------------------------------------------------------------------


def double_index_formula(m1: int, m2: int, k1: int, k2: int) -> Fraction:
    """Double-indexed explicit formula with inner sum over n <= m2."""
    _validate((m1, m2), (k1, k2))
    bound = m1 + m2
    total = Fraction(0)
    for l1 in range(bound + 1):
        for l2 in range(bound + 1):
            inner = sum(
                stirling2(m1 + n, l1) * stirling2(m2 - n, l2) * binomial(m2, n)
                for n in range(m2 + 1)
            )
            if not inner:
                continue
            weight = rational_int_pow(l1 + 1, -k1) * rational_int_pow(l1 + l2 + 2, -k2)
            total += _sign(l1 + l2) * factorial(l1) * factorial(l2) * inner * weight
    return _sign(bound) * total


def _from_argument_weights(
    weights: Dict[IndexTuple, int], k: WeightTuple, bound: int
) -> Fraction:
    total = Fraction(0)
    for args in sorted(weights):
        total += weights[args] * _weighted_stirling_sum(args, k, bound)
    return _sign(bound) * total


def triple_index_formula_a(
    m1: int, m2: int, m3: int, k1: int, k2: int, k3: int
) -> Fraction:
    """
    Triple-indexed formula with inner sums over n1 <= m2, n2 <= m3, n3 <= m3 - n2
    and Stirling arguments (m1 + n1 + n2, m2 - n1 + n3, m3 - n2 - n3).
    """
    m, k = _validate((m1, m2, m3), (k1, k2, k3))
    weights: Dict[IndexTuple, int] = {}
    for n1 in range(m2 + 1):
        for n2 in range(m3 + 1):
            for n3 in range(m3 - n2 + 1):
                args = (m1 + n1 + n2, m2 - n1 + n3, m3 - n2 - n3)
                coeff = binomial(m2, n1) * multinomial(m3, (n2, n3, m3 - n2 - n3))
                weights[args] = weights.get(args, 0) + coeff
    return _from_argument_weights(weights, k, sum(m))


def triple_index_formula_b(
    m1: int, m2: int, m3: int, k1: int, k2: int, k3: int
) -> Fraction:
    """
    Triple-indexed formula over compositions n11 + n12 = m2 and
    n21 + n22 + n23 = m3, Stirling arguments
    (m1 + n11 + n21, m2 - n11 + n22, m3 - n21 - n22).
    """
    m, k = _validate((m1, m2, m3), (k1, k2, k3))
    weights: Dict[IndexTuple, int] = {}
    for n11, n12 in compositions(m2, 2):
        for n21, n22, n23 in compositions(m3, 3):
            args = (m1 + n11 + n21, m2 - n11 + n22, m3 - n21 - n22)
            coeff = multinomial(m2, (n11, n12)) * multinomial(m3, (n21, n22, n23))
            weights[args] = weights.get(args, 0) + coeff
    return _from_argument_weights(weights, k, sum(m))


# ---------------------------------------------------------------------------
# Generating-function oracles
# ---------------------------------------------------------------------------


def _ones(num_vars: int, start: int, stop: int) -> Tuple[int, ...]:
    """Linear form with coefficient 1 on variables start .. stop - 1 (0-based)."""
    return tuple(1 if start <= i < stop else 0 for i in range(num_vars))


def _z_series(r: int, truncation: int) -> List[MultiSeries]:
    """z_j = 1 - exp(-(t_j + ... + t_r)) for j = 1..r."""
    one = series_one(r, truncation)
    out = []
    for j in range(r):
        form = tuple(-c for c in _ones(r, j, r))
        out.append(series_sub(one, series_exp_linear(r, truncation, form)))
    return out


@lru_cache(maxsize=None)
def _ell_basis(r: int, truncation: int) -> Dict[IndexTuple, MultiSeries]:
    """z_1^{l_1} ... z_r^{l_r} for every l with sum(l) <= truncation."""
    logger.debug(f"Building l-expansion basis for r={r}, N={truncation}")
    zs = _z_series(r, truncation)
    powers = [[series_pow(z, e) for e in range(truncation + 1)] for z in zs]
    basis = {}
    for total in range(truncation + 1):
        for ell in compositions(total, r):
            product = powers[0][ell[0]]
            for j in range(1, r):
                product = series_mul(product, powers[j][ell[j]])
            basis[ell] = product
    return basis


def oracle_ell_sum(m: Sequence[int], k: Sequence[int]) -> Fraction:
    """
    B_m^{(k)} from the l-expansion of the generating function.

    The quotient equals the sum over l of
    z_1^{l_1} ... z_r^{l_r} / prod_j (l_1 + ... + l_j + j)^{k_j}. A term has
    total-degree valuation sum(l), so l with sum(l) <= sum(m) suffice.
    """
    m, k = _validate(m, k)
    r, truncation = len(m), sum(m)
    basis = _ell_basis(r, truncation)
    total = Fraction(0)
    for ell, series in basis.items():
        c = coefficient(series, m)
        if not c:
            continue
        weight = Fraction(1)
        prefix = 0
        for j in range(r):
            prefix += ell[j]
            weight *= rational_int_pow(prefix + j + 1, -k[j])
        total += weight * c
    for x in m:
        total *= factorial(x)
    return total


@lru_cache(maxsize=None)
def _li_sha_basis(r: int, truncation: int) -> Dict[IndexTuple, MultiSeries]:
    """
    Each Li^sha summand divided by prod_j (1 - e^{-u_j}), at the given truncation.

    Summands are built at truncation N + r; a summand with top index m'_r has
    valuation m'_r, so m'_r <= N + r suffices. Each factor 1 - e^{-u} is
    u * g(u) with g(0) = 1: multiply by g(u)^{-1}, then divide exactly by u,
    which lowers the truncation by one per factor.
    """
    logger.debug(f"Building Li-sha basis for r={r}, N={truncation}")
    top = truncation + r
    zs = _z_series(r, top)
    g_coeffs = exp_minus_one_over_t(top)
    forms = [_ones(r, j, r) for j in range(r)]
    inverse_g = series_one(r, top)
    for form in forms:
        inverse_g = series_mul(
            inverse_g, series_inverse(series_from_univariate(r, top, g_coeffs, form))
        )

    basis = {}
    for indices in itertools.combinations(range(1, top + 1), r):
        summand = series_one(r, top)
        previous = 0
        for j, index in enumerate(indices):
            summand = series_mul(summand, series_pow(zs[j], index - previous))
            previous = index
        quotient = series_mul(summand, inverse_g)
        for form in forms:
            quotient = series_divide_linear(quotient, form)
        basis[indices] = quotient
    return basis


def oracle_li_sha(m: Sequence[int], k: Sequence[int]) -> Fraction:
    """
    B_m^{(k)} by expanding Li^sha_k(z_1, ..., z_r) directly.

    Li^sha_k(z) = sum over 0 < m'_1 < ... < m'_r of
    z_1^{m'_1} z_2^{m'_2 - m'_1} ... z_r^{m'_r - m'_{r-1}} / prod (m'_j)^{k_j}.
    """
    m, k = _validate(m, k)
    r = len(m)
    total = Fraction(0)
    for indices, series in _li_sha_basis(r, sum(m)).items():
        c = coefficient(series, m)
        if not c:
            continue
        weight = Fraction(1)
        for index, kj in zip(indices, k):
            weight *= rational_int_pow(index, -kj)
        total += weight * c
    for x in m:
        total *= factorial(x)
    return total


# ---------------------------------------------------------------------------
# Duality and the closed-form generating function
# ---------------------------------------------------------------------------


def duality_check(m: Sequence[int], k: Sequence[int]) -> DualityResult:
    """Compare B_m^{(-k)} with B_k^{(-m)} for non-negative m and k."""
    m, k = _validate(m, k)
    if any(x < 0 for x in k):
        raise IndexMismatchError(f"duality needs non-negative k (got: {k})")
    lhs = explicit_multi(m, tuple(-x for x in k))
    rhs = explicit_multi(k, tuple(-x for x in m))
    return DualityResult(lhs == rhs, lhs, rhs)


def genfunc_closed(r: int, truncation: int) -> MultiSeries:
    """
    Closed-form generating function in 2r variables (x_1..x_r, y_1..y_r).

    The product over j of e^{X_j + Y_j} / (e^{X_j} - e^{X_j + Y_j} + e^{Y_j})
    with X_j = x_j + ... + x_r and Y_j = y_j + ... + y_r.
    """
    if r < 1:
        raise IndexMismatchError(f"r must be positive (got: {r})")
    v = 2 * r
    product = series_one(v, truncation)
    for j in range(r):
        x_form = _ones(v, j, r)
        y_form = _ones(v, r + j, v)
        xy_form = tuple(a + b for a, b in zip(x_form, y_form))
        exp_x = series_exp_linear(v, truncation, x_form)
        exp_y = series_exp_linear(v, truncation, y_form)
        exp_xy = series_exp_linear(v, truncation, xy_form)
        denominator = series_sub(exp_x, exp_xy) + exp_y
        product = series_mul(product, series_mul(exp_xy, series_inverse(denominator)))
    return product


def genfunc_coefficients(
    r: int, truncation: int, series: Optional[MultiSeries] = None
) -> Iterator[Tuple[IndexTuple, IndexTuple, Fraction]]:
    """
    Yield (m, k, coefficient * prod m_j! * prod k_j!) for every exponent up to the truncation.

    Pass an already expanded :func:`genfunc_closed` series to skip recomputing it.
    """
    if series is None:
        series = genfunc_closed(r, truncation)
    for exponent in monomials(2 * r, truncation):
        value = coefficient(series, exponent)
        for x in exponent:
            value *= factorial(x)
        yield exponent[:r], exponent[r:], value


def verify_genfunc(r: int, truncation: int) -> List[GenfuncMismatch]:
    """Compare every coefficient of :func:`genfunc_closed` against B_m^{(-k)}."""
    mismatches = []
    for m, k, lhs in genfunc_coefficients(r, truncation):
        rhs = explicit_multi(m, tuple(-x for x in k))
        if lhs != rhs:
            mismatches.append(GenfuncMismatch(m, k, lhs, rhs))
    return mismatches


# ---------------------------------------------------------------------------
# Single-index multiple family
# ---------------------------------------------------------------------------


def single_index_multiple(n: int, k: Sequence[int]) -> Fraction:
    """
    B_n^{(k_1,...,k_r)} defined by Li_k(1 - e^{-t}) / (1 - e^{-t})^r.

    Li_k(z) sums z^{m'_r} / prod (m'_j)^{k_j} over 0 < m'_1 < ... < m'_r.
    Dividing by z^r shifts exponents down by r; the t^n coefficient needs
    m'_r <= n + r.
    """
    k = tuple(int(x) for x in k)
    if not k:
        raise IndexMismatchError("weight tuple must have at least one entry")
    if n < 0:
        raise IndexMismatchError(f"index must be non-negative (got: {n})")
    r = len(k)
    z = series_sub(series_one(1, n), series_exp_linear(1, n, (-1,)))
    total = Fraction(0)
    power = series_one(1, n)
    for top in range(r, n + r + 1):
        weight = Fraction(0)
        for lower in itertools.combinations(range(1, top), r - 1):
            term = Fraction(1)
            for index, kj in zip(lower + (top,), k):
                term *= rational_int_pow(index, -kj)
            weight += term
        total += weight * coefficient(power, (n,))
        power = series_mul(power, z)
    return total * factorial(n)


# ---------------------------------------------------------------------------
# Façade
# ---------------------------------------------------------------------------


def compute(m: Sequence[int], k: Sequence[int], method: str = "auto") -> PolyBernoulliRecord:
    """
    Evaluate B_m^{(k)} with the named method.

    "auto" resolves to "explicit". "double" needs r = 2 and the triple
    formulas need r = 3.

    Raises:
        UnknownMethodError: if ``method`` is not "auto" or in METHODS
        IndexMismatchError: on invalid tuples or an r the method cannot take
    """
    if method == "auto":
        method = "explicit"
    if method not in METHODS:
        raise UnknownMethodError(
            f"unknown method {method!r}; expected one of {', '.join(METHODS)}"
        )
    m, k = _validate(m, k)
    r = len(m)

    if method == "double" and r != 2:
        raise IndexMismatchError(f"method 'double' needs r = 2 (got: r = {r})")
    if method in ("triple-a", "triple-b") and r != 3:
        raise IndexMismatchError(f"method {method!r} needs r = 3 (got: r = {r})")

    if method == "explicit":
        value = explicit_multi(m, k)
    elif method == "double":
        value = double_index_formula(*m, *k)
    elif method == "triple-a":
        value = triple_index_formula_a(*m, *k)
    elif method == "triple-b":
        value = triple_index_formula_b(*m, *k)
    elif method == "oracle-ell":
        value = oracle_ell_sum(m, k)
    else:
        value = oracle_li_sha(m, k)

    logger.bind(m=m, k=k, method=method).debug(f"B_{m}^{k} = {value}")
    return PolyBernoulliRecord(r=r, m=m, k=k, value=value, method=method)


def clear_caches() -> None:
    """Drop memoized intermediate results."""
    for cached in (
        _inner_weights,
        _weighted_stirling_sum,
        _explicit_cached,
        _ell_basis,
        _li_sha_basis,
    ):
        cached.cache_clear()
