"""
Verification suites.

Each suite enumerates its cases in a fixed order, evaluates them on a
:class:`~multi_polybernoulli.worker.WorkerPool`, and collects every
disagreement into a :class:`VerifyReport`. A mismatch is a mathematical
finding, not an error.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from loguru import logger

from .formal_series import MultiSeries
from .polybernoulli import (
    IndexTuple,
    WeightTuple,
    classical_bernoulli,
    classical_bernoulli_series,
    double_index_formula,
    duality_check,
    explicit_multi,
    genfunc_coefficients,
    oracle_ell_sum,
    oracle_li_sha,
    poly_bernoulli,
    single_index_multiple,
    triple_index_formula_a,
    triple_index_formula_b,
)
from .utils import rational_to_json
from .worker import WorkerPool

ProgressCallback = Callable[[int, int], None]


class Mismatch(NamedTuple):
    m: IndexTuple
    k: WeightTuple
    lhs: Fraction
    rhs: Fraction


@dataclass
class VerifyReport:
    """Outcome of one verification suite."""

    suite: str
    cases_checked: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases_checked": self.cases_checked,
            "passed": self.passed,
            "mismatches": [
                {
                    "m": list(row.m),
                    "k": list(row.k),
                    "lhs": rational_to_json(row.lhs),
                    "rhs": rational_to_json(row.rhs),
                }
                for row in self.mismatches
            ],
        }


def _run(
    suite: str,
    cases: Sequence,
    check: Callable,
    pool: Optional[WorkerPool],
    progress: Optional[ProgressCallback],
) -> VerifyReport:
    pool = pool or WorkerPool(1)
    ctx_logger = logger.bind(suite=suite)
    ctx_logger.info(f"Running {suite} suite over {len(cases)} cases")

    outcomes = pool.map(check, cases, on_task_complete=progress)

    report = VerifyReport(suite=suite, cases_checked=len(cases))
    for rows in outcomes:
        report.mismatches.extend(rows)

    if report.passed:
        ctx_logger.info(f"{suite}: {report.cases_checked} cases, no mismatches")
    else:
        ctx_logger.warning(
            f"{suite}: {len(report.mismatches)} mismatches in {report.cases_checked} cases"
        )
    return report


def _tuples(values: Iterable[int], r: int) -> List[Tuple[int, ...]]:
    return list(itertools.product(list(values), repeat=r))


def _check_duality(case) -> List[Mismatch]:
    m, k = case
    result = duality_check(m, k)
    return [] if result.holds else [Mismatch(m, k, result.lhs, result.rhs)]


def verify_duality(
    r: int,
    max_entry: int,
    pool: Optional[WorkerPool] = None,
    progress: Optional[ProgressCallback] = None,
) -> VerifyReport:
    """B_m^{(-k)} = B_k^{(-m)} for every m, k in {0..max_entry}^r."""
    grid = _tuples(range(max_entry + 1), r)
    cases = [(m, k) for m in grid for k in grid]
    return _run("duality", cases, _check_duality, pool, progress)


def _check_oracles(case) -> List[Mismatch]:
    m, k = case
    expected = explicit_multi(m, k)
    rows = []
    for oracle in (oracle_ell_sum, oracle_li_sha):
        value = oracle(m, k)
        if value != expected:
            rows.append(Mismatch(m, k, expected, value))
    return rows


def verify_oracles(
    r: int,
    max_m: int,
    k_set: Sequence[int],
    pool: Optional[WorkerPool] = None,
    progress: Optional[ProgressCallback] = None,
) -> VerifyReport:
    """explicit_multi against both series oracles for m in {0..max_m}^r and k in k_set^r."""
    cases = [(m, k) for m in _tuples(range(max_m + 1), r) for k in _tuples(k_set, r)]
    return _run("oracle", cases, _check_oracles, pool, progress)


def _check_genfunc(case) -> List[Mismatch]:
    m, k, lhs = case
    rhs = explicit_multi(m, tuple(-x for x in k))
    return [] if lhs == rhs else [Mismatch(m, k, lhs, rhs)]


def verify_generating_function(
    r: int,
    degree: int,
    pool: Optional[WorkerPool] = None,
    progress: Optional[ProgressCallback] = None,
    series: Optional[MultiSeries] = None,
) -> VerifyReport:
    """Closed-form generating function coefficients against B_m^{(-k)} up to total degree."""
    cases = list(genfunc_coefficients(r, degree, series))
    return _run("genfunc", cases, _check_genfunc, pool, progress)


def _check_formulas(case) -> List[Mismatch]:
    m, k = case
    expected = explicit_multi(m, k)
    r = len(m)
    if r == 1:
        candidates = [poly_bernoulli(m[0], k[0])]
        if k[0] == 1:
            candidates.append(classical_bernoulli(m[0]))
            candidates.append(classical_bernoulli_series(m[0])[m[0]])
    elif r == 2:
        candidates = [double_index_formula(*m, *k)]
    else:
        candidates = [triple_index_formula_a(*m, *k), triple_index_formula_b(*m, *k)]
    return [Mismatch(m, k, expected, value) for value in candidates if value != expected]


def verify_formulas(
    max_m: int,
    k_set: Sequence[int],
    pool: Optional[WorkerPool] = None,
    progress: Optional[ProgressCallback] = None,
) -> VerifyReport:
    """
    Every specialized formula against explicit_multi.

    r = 1: poly_bernoulli, and the classical numbers when k = 1.
    r = 2: double_index_formula. r = 3: both triple-index formulas.
    """
    cases = []
    for r in (1, 2, 3):
        cases.extend(
            (m, k) for m in _tuples(range(max_m + 1), r) for k in _tuples(k_set, r)
        )
    return _run("formulas", cases, _check_formulas, pool, progress)


def _check_single(case) -> List[Mismatch]:
    n, k = case
    m = (0,) * (len(k) - 1) + (n,)
    expected = explicit_multi(m, k)
    value = single_index_multiple(n, k)
    return [] if value == expected else [Mismatch(m, k, expected, value)]


def verify_single_index(
    r: int,
    max_n: int,
    k_set: Sequence[int],
    pool: Optional[WorkerPool] = None,
    progress: Optional[ProgressCallback] = None,
) -> VerifyReport:
    """single_index_multiple(n, k) against explicit_multi((0, ..., 0, n), k)."""
    cases = [(n, k) for n in range(max_n + 1) for k in _tuples(k_set, r)]
    return _run("single", cases, _check_single, pool, progress)
