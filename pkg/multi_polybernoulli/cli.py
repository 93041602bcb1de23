"""
Command-line interface for multi-polybernoulli.

Subcommands:
    compute   evaluate one B_m^{(k)} with a chosen method
    table     stream values over a grid of index/weight tuples
    verify    run a verification suite (duality, oracle, genfunc, formulas, single)

Results go to stdout; logs and progress bars go to stderr.
Exit codes: 0 success/verified, 1 verification mismatches, 2 usage error or
internal failure.
"""

import argparse
import itertools
import json
import sys
from contextlib import contextmanager
from typing import Callable, List, Optional, Sequence, Tuple

from loguru import logger
from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeElapsedColumn,
)

from .config import Config, load_config
from .logging_config import setup_logging
from .formal_series import MultiSeries, series_to_json
from .polybernoulli import (
    METHODS,
    IndexMismatchError,
    UnknownMethodError,
    compute,
    genfunc_closed,
)
from .utils import (
    parse_int_tuple,
    parse_range,
    record_to_json,
    record_to_plain,
    records_to_csv,
    report_to_csv,
    report_to_plain,
)
from .verification import (
    VerifyReport,
    verify_duality,
    verify_formulas,
    verify_generating_function,
    verify_oracles,
    verify_single_index,
)
from .worker import WorkerPool, WorkerTaskError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

# Shared stderr console for coordinated logging and progress output
console = Console(stderr=True)


class UsageError(Exception):
    """Malformed or out-of-range command-line input."""


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=["json", "csv", "plain"],
        help="Output format (default: plain)",
    )
    parser.add_argument(
        "--max-total-degree",
        type=int,
        help="Largest allowed total index degree of a request (default: 8)",
    )
    parser.add_argument(
        "--workers", type=int, help="Number of sweep worker threads (default: 1)"
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        type=str.upper,
        help="Logging level (default: WARNING)",
    )
    parser.add_argument(
        "--log-format",
        choices=["pretty", "json"],
        help="Log output format on stderr (default: pretty)",
    )
    parser.add_argument("--log-file", help="Append ERROR-level logs to this file")
    parser.add_argument(
        "--no-progress",
        dest="progress",
        action="store_const",
        const=False,
        default=None,
        help="Disable the progress bar",
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    _add_common_arguments(common)

    parser = argparse.ArgumentParser(
        prog="multi-polybernoulli",
        description="Exact computation and verification of multi-indexed poly-Bernoulli numbers",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    method_choices = ["auto", *METHODS]

    compute_parser = commands.add_parser(
        "compute", parents=[common], help="Compute a single value"
    )
    compute_parser.add_argument("--m", required=True, help="Index tuple, e.g. 1,2,0")
    compute_parser.add_argument("--k", required=True, help="Weight tuple, e.g. -1,0,2")
    compute_parser.add_argument(
        "--method", choices=method_choices, default="auto", help="Evaluator (default: auto)"
    )

    table_parser = commands.add_parser(
        "table", parents=[common], help="Emit values over a grid"
    )
    table_parser.add_argument("--r", type=int, required=True, help="Depth r")
    table_parser.add_argument(
        "--max-m", type=int, required=True, help="Largest index entry"
    )
    weights = table_parser.add_mutually_exclusive_group(required=True)
    weights.add_argument(
        "--k", help="One weight for every slot, or a full weight tuple of length r"
    )
    weights.add_argument("--k-range", help="Inclusive range a..b for every weight slot")
    table_parser.add_argument(
        "--method", choices=method_choices, default="auto", help="Evaluator (default: auto)"
    )

    verify_parser = commands.add_parser("verify", help="Run a verification suite")
    suites = verify_parser.add_subparsers(dest="suite", required=True)

    duality = suites.add_parser(
        "duality", parents=[common], help="B_m^(-k) = B_k^(-m) over a grid"
    )
    duality.add_argument("--r", type=int, required=True)
    duality.add_argument("--max", type=int, required=True, help="Largest m and k entry")

    oracle = suites.add_parser(
        "oracle", parents=[common], help="Explicit formula against both series oracles"
    )
    oracle.add_argument("--r", type=int, required=True)
    oracle.add_argument("--max-m", type=int, required=True)
    oracle.add_argument("--k-set", default="-1,0,1", help="Weights per slot (default: -1,0,1)")

    genfunc = suites.add_parser(
        "genfunc", parents=[common], help="Closed-form generating function coefficients"
    )
    genfunc.add_argument("--r", type=int, required=True)
    genfunc.add_argument("--degree", type=int, required=True, help="Series truncation")
    genfunc.add_argument(
        "--dump-series",
        metavar="PATH",
        help="Also write the expanded generating function to PATH as JSON",
    )

    formulas = suites.add_parser(
        "formulas", parents=[common], help="Single, double and triple formulas against the general one"
    )
    formulas.add_argument("--max-m", type=int, default=2)
    formulas.add_argument("--k-set", default="-1,0,1")

    single = suites.add_parser(
        "single", parents=[common], help="Single-index multiple numbers against B_(0,...,0,n)"
    )
    single.add_argument("--r", type=int, required=True)
    single.add_argument("--max-m", type=int, required=True, help="Largest n")
    single.add_argument("--k-set", default="-1,0,1")

    return parser


_TUPLE_FLAGS = ("--m", "--k", "--k-set", "--k-range")


def _attach_negative_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--k -1,-1`` as ``--k=-1,-1`` so argparse does not read it as a flag."""
    out: List[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        token = tokens[i]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if (
            token in _TUPLE_FLAGS
            and nxt is not None
            and len(nxt) > 1
            and nxt[0] == "-"
            and nxt[1].isdigit()
        ):
            out.append(f"{token}={nxt}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    argv = sys.argv[1:] if argv is None else argv
    return build_parser().parse_args(_attach_negative_values(argv))


def _parse_tuple(text: str, name: str) -> Tuple[int, ...]:
    try:
        return parse_int_tuple(text)
    except ValueError as e:
        raise UsageError(f"--{name}: {e}") from None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def _check_degree(total: int, config: Config) -> None:
    _require(
        total <= config.max_total_degree,
        f"request reaches total degree {total}, above the limit "
        f"{config.max_total_degree} (raise it with --max-total-degree)",
    )


@contextmanager
def _progress_bar(description: str, enabled: bool):
    """Yield an on_task_complete callback driving a rich progress bar on stderr."""
    if not enabled:
        yield None
        return

    progress = Progress(
        SpinnerColumn(),
        TextColumn("[bold green]{task.description}"),
        BarColumn(bar_width=None, style="red", complete_style="green", finished_style="green"),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    )
    with progress:
        task = progress.add_task(description, total=None)

        def on_task_complete(completed: int, total: int) -> None:
            progress.update(task, completed=completed, total=total)

        yield on_task_complete


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    sys.stdout.flush()


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def run_compute(args: argparse.Namespace, config: Config) -> int:
    m = _parse_tuple(args.m, "m")
    k = _parse_tuple(args.k, "k")
    _require(len(m) == len(k), f"--m and --k differ in length ({len(m)} vs {len(k)})")
    _require(all(x >= 0 for x in m), f"--m entries must be non-negative (got: {args.m})")
    _check_degree(sum(m), config)

    record = compute(m, k, args.method)

    if config.output_format == "json":
        _write(record_to_json(record))
    elif config.output_format == "csv":
        _write(records_to_csv([record]))
    else:
        _write(f"{record.value.numerator}/{record.value.denominator}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def table_cases(
    r: int, max_m: int, weights: List[Tuple[int, ...]]
) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(m, k) pairs in graded lexicographic order of m, then lexicographic k."""
    indices = sorted(
        itertools.product(range(max_m + 1), repeat=r), key=lambda m: (sum(m), m)
    )
    return [(m, k) for m in indices for k in sorted(weights)]


def _table_weights(args: argparse.Namespace, r: int) -> List[Tuple[int, ...]]:
    if args.k_range is not None:
        try:
            values = parse_range(args.k_range)
        except ValueError as e:
            raise UsageError(f"--k-range: {e}") from None
        return list(itertools.product(values, repeat=r))

    k = _parse_tuple(args.k, "k")
    if len(k) == 1:
        return [k * r]
    _require(len(k) == r, f"--k must have 1 or {r} entries (got: {len(k)})")
    return [k]


def run_table(args: argparse.Namespace, config: Config, pool: WorkerPool) -> int:
    _require(args.r >= 1, f"--r must be positive (got: {args.r})")
    _require(args.max_m >= 0, f"--max-m must be non-negative (got: {args.max_m})")
    _check_degree(args.r * args.max_m, config)

    cases = table_cases(args.r, args.max_m, _table_weights(args, args.r))
    method = args.method

    def evaluate(case):
        m, k = case
        return compute(m, k, method)

    with _progress_bar("Computing table", config.progress) as on_done:
        records = pool.map(evaluate, cases, on_task_complete=on_done)

    if config.output_format == "json":
        for record in records:
            _write(record_to_json(record))
    elif config.output_format == "csv":
        _write(records_to_csv(records))
    else:
        for record in records:
            _write(record_to_plain(record))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _parse_k_set(text: str) -> Tuple[int, ...]:
    values = _parse_tuple(text, "k-set")
    return tuple(sorted(set(values)))


def _dump_series(series: MultiSeries, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(series_to_json(series), handle)
    except OSError as e:
        raise UsageError(f"--dump-series: cannot write {path}: {e.strerror}") from None
    logger.info(f"Wrote {len(series)} series terms to {path}")


def _suite_runner(
    args: argparse.Namespace, config: Config
) -> Tuple[str, Callable[..., VerifyReport]]:
    """Validate suite options and return (label, callable taking pool and progress)."""
    suite = args.suite
    if suite == "formulas":
        _require(args.max_m >= 0, f"--max-m must be non-negative (got: {args.max_m})")
        _check_degree(3 * args.max_m, config)
        k_set = _parse_k_set(args.k_set)
        return suite, lambda **kw: verify_formulas(args.max_m, k_set, **kw)

    _require(args.r >= 1, f"--r must be positive (got: {args.r})")
    if suite == "duality":
        _require(args.max >= 0, f"--max must be non-negative (got: {args.max})")
        _check_degree(args.r * args.max, config)
        return suite, lambda **kw: verify_duality(args.r, args.max, **kw)
    if suite == "oracle":
        _require(args.max_m >= 0, f"--max-m must be non-negative (got: {args.max_m})")
        _check_degree(args.r * args.max_m, config)
        k_set = _parse_k_set(args.k_set)
        return suite, lambda **kw: verify_oracles(args.r, args.max_m, k_set, **kw)
    if suite == "genfunc":
        _require(args.degree >= 0, f"--degree must be non-negative (got: {args.degree})")
        _check_degree(args.degree, config)
        series = None
        if args.dump_series:
            series = genfunc_closed(args.r, args.degree)
            _dump_series(series, args.dump_series)
        return suite, lambda **kw: verify_generating_function(
            args.r, args.degree, series=series, **kw
        )

    _require(args.max_m >= 0, f"--max-m must be non-negative (got: {args.max_m})")
    _check_degree(args.max_m, config)
    k_set = _parse_k_set(args.k_set)
    return suite, lambda **kw: verify_single_index(args.r, args.max_m, k_set, **kw)


def run_verify(args: argparse.Namespace, config: Config, pool: WorkerPool) -> int:
    suite, runner = _suite_runner(args, config)

    with _progress_bar(f"Verifying {suite}", config.progress) as on_done:
        report = runner(pool=pool, progress=on_done)

    if config.output_format == "json":
        _write(json.dumps(report.to_dict()))
    elif config.output_format == "csv":
        _write(report_to_csv(report))
    else:
        _write(report_to_plain(report))

    return EXIT_OK if report.passed else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def setup_application(argv: Optional[Sequence[str]] = None) -> tuple:
    """Set up logging, parse arguments and load configuration."""
    setup_logging(console=console)

    args = parse_arguments(argv)

    config = load_config(args)
    if config is None:
        return args, None

    setup_logging(
        config.log_level,
        console=console,
        log_format=config.log_format,
        log_file=config.log_file,
    )
    return args, config


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    try:
        args, config = setup_application(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if config is None:
        return EXIT_USAGE

    pool = WorkerPool(config.workers)
    try:
        if args.command == "compute":
            return run_compute(args, config)
        if args.command == "table":
            return run_table(args, config, pool)
        return run_verify(args, config, pool)
    except (UsageError, IndexMismatchError, UnknownMethodError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except WorkerTaskError as e:
        if isinstance(e.error, (IndexMismatchError, UnknownMethodError)):
            logger.error(f"❌ {e.error}")
            return EXIT_USAGE
        logger.opt(exception=e.error).error(f"Unexpected error in main execution: {e}")
        return EXIT_USAGE
    except Exception as e:
        # exit code 1 is reserved for verification mismatches
        logger.exception(f"Unexpected error in main execution: {e}")
        return EXIT_USAGE
    finally:
        pool.shutdown()


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the application."""
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
