"""
Utility functions for multi-polybernoulli.

Parsing of command-line tuples and ranges, and exact rendering of rationals
and result records. Rationals are always written as decimal integer strings,
never floats.
"""

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, List, Mapping, Tuple

CSV_HEADER = ["r", "m", "k", "method", "value"]
REPORT_CSV_HEADER = ["suite", "cases_checked", "passed", "m", "k", "lhs", "rhs"]


def parse_int_tuple(text: str) -> Tuple[int, ...]:
    """
    Parse a comma-separated list of integers, e.g. ``"1,2,0"`` or ``"-1"``.

    Raises:
        ValueError: if the text is empty or an entry is not an integer
    """
    parts = [part.strip() for part in text.split(",")]
    if not text.strip() or any(not part for part in parts):
        raise ValueError(f"expected comma-separated integers (got: {text!r})")
    try:
        return tuple(int(part) for part in parts)
    except ValueError:
        raise ValueError(f"expected comma-separated integers (got: {text!r})") from None


def parse_range(text: str) -> List[int]:
    """
    Parse an inclusive range ``"a..b"``; a single integer is a one-element range.

    Raises:
        ValueError: if the text is malformed or a > b
    """
    low, sep, high = text.partition("..")
    try:
        start = int(low.strip())
        stop = int(high.strip()) if sep else start
    except ValueError:
        raise ValueError(
            f"expected an inclusive range like 0..3 (got: {text!r})"
        ) from None
    if start > stop:
        raise ValueError(f"range start exceeds end (got: {text!r})")
    return list(range(start, stop + 1))


def format_rational(value: Fraction) -> str:
    """Render as ``"num/den"``; integers keep the ``/1``."""
    return f"{value.numerator}/{value.denominator}"


def rational_to_json(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_json(payload: Mapping) -> Fraction:
    return Fraction(int(payload["num"]), int(payload["den"]))


def _joined(values: Iterable[int]) -> str:
    return ";".join(str(v) for v in values)


def record_to_json(record) -> str:
    """One JSON line for a PolyBernoulliRecord."""
    return json.dumps(record.to_dict())


def records_to_csv(records: Iterable) -> str:
    """CSV with header ``r,m,k,method,value``; m and k are semicolon-joined."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(
            [
                record.r,
                _joined(record.m),
                _joined(record.k),
                record.method,
                format_rational(record.value),
            ]
        )
    return buffer.getvalue()


def record_to_plain(record) -> str:
    return (
        f"r={record.r} m={_joined(record.m)} k={_joined(record.k)} "
        f"method={record.method} value={format_rational(record.value)}"
    )


def report_to_plain(report) -> str:
    """Human-readable summary of a VerifyReport."""
    verdict = "PASSED" if report.passed else "FAILED"
    lines = [
        f"suite={report.suite} cases={report.cases_checked} "
        f"mismatches={len(report.mismatches)} {verdict}"
    ]
    for row in report.mismatches:
        lines.append(
            f"  m={_joined(row.m)} k={_joined(row.k)} "
            f"lhs={format_rational(row.lhs)} rhs={format_rational(row.rhs)}"
        )
    return "\n".join(lines)


def report_to_csv(report) -> str:
    """
    CSV with header ``suite,cases_checked,passed,m,k,lhs,rhs``.

    One row per mismatch; a passing report gets a single summary row with
    the mismatch columns left empty.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_CSV_HEADER)
    summary = [report.suite, report.cases_checked, str(report.passed).lower()]
    if not report.mismatches:
        writer.writerow([*summary, "", "", "", ""])
    for row in report.mismatches:
        writer.writerow(
            [
                *summary,
                _joined(row.m),
                _joined(row.k),
                format_rational(row.lhs),
                format_rational(row.rhs),
            ]
        )
    return buffer.getvalue()
