# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Command-line front end for primrows.

Results go to stdout (or --out) as plain text, CSV or JSON. Status lines and
logs go to stderr.

Exit codes:
    0  success
    1  verification failure or internal inconsistency
    2  invalid input
    3  enumeration budget exceeded
"""

import argparse
import csv
import json
import logging
import os
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Annotated, Any, Dict, Iterator, List, Literal, Optional, Sequence, TextIO

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from primrows import __version__
from primrows.asymptotics import c_nk_prime, constant_report
from primrows.config import CONFIG_ENV_VAR, load_settings
from primrows.density import (
    density,
    density_lower_bound,
    density_monotone_check,
    density_n2_bounds,
    density_prime_limit,
    density_prime_limit_n2,
    density_zero,
    find_k_for_density,
)
from primrows.errors import BudgetExceededError, ConsistencyError
from primrows.lattice.ball import (
    BallQuery,
    count_ball,
    count_ball_fast_n2,
    orbit_classes,
    orbit_decomposition_check,
)
from primrows.orbits import orbit_counts
from primrows.utils import format_decimal, format_fraction, print_msg, print_section
from primrows.verify import run_suites, suite_names

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CONVERGE_COLUMNS = ["T", "N", "Nprime", "Nprime_over_T2", "c_prime", "ratio"]
SCAN_COLUMNS = ["k", "a", "a_prime", "D_exact", "D_decimal"]

# Largest |k| (and --kmax, --p) accepted on the command line
MAX_INPUT = 2**64

# Commands whose tables are CSV unless --format says otherwise
CSV_COMMANDS = ("converge", "scan")


class RunConfig(BaseModel):
    """Validated parameters of one CLI run."""

    model_config = ConfigDict(frozen=True)

    command: Literal["count", "density", "constants", "oracle", "converge", "scan", "verify"]
    n: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=-MAX_INPUT, le=MAX_INPUT)
    k_max: Optional[int] = Field(None, ge=1, le=MAX_INPUT)
    T: Optional[str] = None
    T_max: Optional[str] = None
    steps: int = Field(10, ge=1)
    p: List[Annotated[int, Field(le=MAX_INPUT)]] = Field(default_factory=list)
    m_max: Optional[int] = Field(None, ge=0)
    target: Optional[float] = Field(None, ge=0)
    eps: float = Field(0.01, gt=0)
    strategy: Literal["greedy", "consecutive"] = "greedy"
    primitive: bool = False
    fast: bool = False
    orbits: bool = False
    threads: Optional[int] = Field(None, ge=1, le=256)
    budget: Optional[int] = Field(None, gt=0)
    out: Optional[str] = None
    format: Literal["plain", "csv", "json"] = "plain"
    suites: List[str] = Field(default_factory=list)

    @field_validator("T", "T_max")
    @classmethod
    def validate_radius(cls, v: Optional[str]) -> Optional[str]:
        """
        Check that a radius parses as an exact non-negative rational.

        Args:
            v: Radius as given on the command line, e.g. '31.6' or '1000'

        Returns:
            The radius string unchanged

        Raises:
            ValueError: If the value is not a non-negative number
        """
        if v is None:
            return v
        try:
            radius = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Radius must be a decimal or fraction, got {v!r}") from None
        if radius < 0:
            raise ValueError(f"Radius must be non-negative, got {v}")
        return v

    @model_validator(mode="after")
    def check_command_arguments(self) -> "RunConfig":
        """Reject flag combinations the selected command cannot run."""
        command = self.command
        if command in ("count", "scan", "constants", "oracle"):
            _require(self.n is not None and self.n >= 2, f"{command} needs --n >= 2")
        if command == "count":
            _require(self.k is not None and self.k != 0, "count needs a nonzero --k")
        elif command == "scan":
            _require(self.k_max is not None, "scan needs --kmax >= 1")
        elif command == "density":
            if self.target is None:
                _require(self.n is not None and self.n >= 2, "density needs --n >= 2")
                _require(
                    self.k is not None or bool(self.p),
                    "density needs --k, --p with --mmax, or --target",
                )
                _require(not self.p or self.m_max is not None, "--p needs --mmax")
                _require(self.k != 0 or self.n >= 3, "D_n(0) is only finite for n >= 3")
        elif command == "oracle":
            _require(self.k is not None, "oracle needs --k")
            _require(self.T is not None, "oracle needs --T")
            if self.fast:
                _require(self.n == 2 and self.k != 0, "--fast needs --n 2 and a nonzero --k")
            if self.orbits:
                _require(self.k >= 1, "--orbits needs a positive --k")
        elif command == "converge":
            _require(self.n in (None, 2), "converge only runs for n = 2")
            _require(self.k is not None and self.k != 0, "converge needs a nonzero --k")
            _require(
                self.T_max is not None and Fraction(self.T_max) > 0, "converge needs --Tmax > 0"
            )
        elif command == "verify":
            unknown = [name for name in self.suites if name not in suite_names()]
            _require(
                not unknown,
                f"Unknown suite(s): {', '.join(unknown)}; "
                f"choose from {', '.join(suite_names())}",
            )
        return self


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


class Report(BaseModel):
    """Rows produced by a command, plus optional summary values."""

    columns: List[str]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = True


def _render(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, float):
        return format_decimal(value, digits)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


def write_report(config: RunConfig, report: Report, stream: TextIO, digits: int) -> None:
    """
    Write a report in the configured format.

    CSV has a header line and LF line endings. JSON is one object with
    'config' and 'results' (and 'summary' when the command has one). Plain
    text prints a single row as 'key: value' lines and several rows as an
    aligned table.

    Args:
        config: Run configuration (echoed into JSON output)
        report: Rows and summary to write
        stream: Destination
        digits: Significant digits for decimal fields
    """
    if config.format == "json":
        document: Dict[str, Any] = {
            "config": config.model_dump(mode="json"),
            "results": _jsonable(report.rows),
        }
        if report.summary:
            document["summary"] = _jsonable(report.summary)
        json.dump(document, stream, indent=2)
        stream.write("\n")
        return

    if config.format == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_render(row.get(column), digits) for column in report.columns])
        for key, value in report.summary.items():
            print_msg(f"{key}: {_render(value, digits)}", "info")
        return

    if len(report.rows) == 1:
        row = report.rows[0]
        width = max(len(column) for column in report.columns)
        for column in report.columns:
            stream.write(f"{column:<{width}}  {_render(row.get(column), digits)}\n")
    else:
        cells = [
            [_render(row.get(column), digits) for column in report.columns] for row in report.rows
        ]
        widths = [
            max([len(column)] + [len(line[i]) for line in cells])
            for i, column in enumerate(report.columns)
        ]
        stream.write("  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip() + "\n")
        for line in cells:
            stream.write("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() + "\n")
    if report.summary:
        stream.write("\n")
        for key, value in report.summary.items():
            stream.write(f"{key}: {_render(value, digits)}\n")


def cmd_count(config: RunConfig) -> Report:
    """a_n(k), a'_n(k) and D_n(k)."""
    a_n, a_prime_n = orbit_counts(config.n, config.k)
    value = Fraction(a_prime_n, a_n)
    return Report(
        columns=["n", "k", "a", "a_prime", "D_exact", "D_decimal"],
        rows=[
            {
                "n": config.n,
                "k": config.k,
                "a": a_n,
                "a_prime": a_prime_n,
                "D_exact": value,
                "D_decimal": float(value),
            }
        ],
    )


def _density_table(config: RunConfig) -> Report:
    n = config.n
    rows = []
    summary: Dict[str, Any] = {}
    for p in config.p:
        for m in range(config.m_max + 1):
            value = density(n, p**m)
            rows.append({"p": p, "m": m, "D_exact": value, "D_decimal": float(value)})
        limit = density_prime_limit_n2(p) if n == 2 else density_prime_limit(n, p)
        summary[f"limit_p{p}"] = limit
        if config.m_max >= 1:
            summary[f"decreasing_p{p}"] = density_monotone_check(n, p, config.m_max)
    return Report(columns=["p", "m", "D_exact", "D_decimal"], rows=rows, summary=summary)


def _density_search(config: RunConfig, max_primes: int) -> Report:
    k = find_k_for_density(config.target, config.eps, config.strategy, max_primes)
    value = density(2, k)
    return Report(
        columns=["target", "eps", "strategy", "k", "D_exact", "D_decimal"],
        rows=[
            {
                "target": config.target,
                "eps": config.eps,
                "strategy": config.strategy,
                "k": k,
                "D_exact": value,
                "D_decimal": float(value),
            }
        ],
    )


def cmd_density(config: RunConfig, max_primes: int) -> Report:
    """D_n(k), a table of D_n(p^m), D_n(0) or a search for k with a given D_2(k)."""
    if config.target is not None:
        return _density_search(config, max_primes)
    if config.p:
        return _density_table(config)

    n, k = config.n, config.k
    if k == 0:
        return Report(
            columns=["n", "k", "D_decimal"],
            rows=[{"n": n, "k": 0, "D_decimal": density_zero(n)}],
        )
    value = density(n, k)
    row: Dict[str, Any] = {"n": n, "k": k, "D_exact": value, "D_decimal": float(value)}
    if n == 2:
        lower, upper = density_n2_bounds(k)
        row.update(lower_bound=lower, upper_bound=upper)
    else:
        row.update(lower_bound=density_lower_bound(n, k), upper_bound=Fraction(1))
    return Report(columns=list(row), rows=[row])


def cmd_constants(config: RunConfig) -> Report:
    """C_0, C_1, c_{n,k} and c'_{n,k} with error bounds."""
    row = constant_report(config.n, config.k).model_dump()
    return Report(columns=list(row), rows=[row])


def cmd_oracle(config: RunConfig) -> Report:
    """Brute-force N_{n,k}(T) or N'_{n,k}(T), optionally split by orbit."""
    query = BallQuery.from_radius(config.n, config.k, config.T, primitive_only=config.primitive)
    if config.fast:
        count = count_ball_fast_n2(query, budget=config.budget)
    else:
        count = count_ball(query, threads=config.threads, budget=config.budget)
    row = {
        "n": query.n,
        "k": query.k,
        "T": config.T,
        "T_sq": query.T_sq,
        "primitive": query.primitive_only,
        "count": count,
    }
    if not config.orbits:
        return Report(columns=list(row), rows=[row])

    classes = orbit_classes(query.n, query.k, query.T_sq)
    consistent = orbit_decomposition_check(query.n, query.k, query.T_sq)
    rows = [
        {"representative": str(representative), "size": size}
        for representative, size in sorted(classes.items(), key=lambda item: item[0].rows)
    ]
    summary = {"count": count, "orbits_hit": len(classes), "decomposition_consistent": consistent}
    return Report(columns=["representative", "size"], rows=rows, summary=summary, passed=consistent)


def cmd_converge(config: RunConfig) -> Report:
    """N_{2,k}(T), N'_{2,k}(T) and N'/(c' T^2) on an evenly spaced grid of T."""
    k = config.k
    t_max = Fraction(config.T_max)
    c_prime = c_nk_prime(2, k)
    rows = []
    for step in range(1, config.steps + 1):
        t = t_max * step / config.steps
        t_sq = t * t
        total = count_ball_fast_n2(BallQuery(n=2, k=k, T_sq=t_sq), budget=config.budget)
        primitive = count_ball_fast_n2(
            BallQuery(n=2, k=k, T_sq=t_sq, primitive_only=True), budget=config.budget
        )
        per_area = float(Fraction(primitive) / t_sq)
        rows.append(
            {
                "T": float(t),
                "N": total,
                "Nprime": primitive,
                "Nprime_over_T2": per_area,
                "c_prime": c_prime,
                "ratio": per_area / c_prime,
            }
        )
        logger.info(f"converge T={float(t)}: N={total} N'={primitive}")
    return Report(columns=CONVERGE_COLUMNS, rows=rows)


def cmd_scan(config: RunConfig) -> Report:
    """One row (k, a, a', D exact, D decimal) per k = 1..k_max."""
    rows = []
    for k in range(1, config.k_max + 1):
        a_n, a_prime_n = orbit_counts(config.n, k)
        value = Fraction(a_prime_n, a_n)
        rows.append(
            {"k": k, "a": a_n, "a_prime": a_prime_n, "D_exact": value, "D_decimal": float(value)}
        )
    return Report(columns=SCAN_COLUMNS, rows=rows)


def cmd_verify(config: RunConfig) -> Report:
    """Run verification suites, reporting progress on stderr."""
    names = config.suites or suite_names()
    print_section(f"primrows verify: {len(names)} suite(s)")
    results = []
    for name in names:
        (result,) = run_suites([name])
        results.append(result)
        if result.passed:
            print_msg(f"{name}: {result.checks} checks passed ({result.seconds}s)", "success")
        else:
            print_msg(f"{name}: {result.failed} of {result.checks} checks failed", "error")
            for failure in result.failures:
                print_msg(f"  {failure}", "error")
        for note in result.notes:
            print_msg(f"  {note}", "info")

    passed = all(result.passed for result in results)
    failed = [result.name for result in results if not result.passed]
    if passed:
        print_msg("All suites passed", "success")
    else:
        print_msg(f"Failed suites: {', '.join(failed)}", "error")
    return Report(
        columns=["name", "passed", "checks", "failed", "seconds"],
        rows=[result.model_dump() for result in results],
        summary={"passed": passed, "failed_suites": failed},
        passed=passed,
    )


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
        argparse.Namespace: Parsed arguments
    """
    parser = argparse.ArgumentParser(
        prog="primrows",
        description="Orbit counts and densities of integer matrices with primitive rows",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # a_4(2), a'_4(2) and D_4(2) = 11/15
  primrows count --n 4 --k 2

  # D_3(2^m) for m = 0..8 with its limit
  primrows density --n 3 --p 2 --mmax 8

  # Squarefree k with -log D_2(k) within 0.01 of 1.5
  primrows density --target 1.5 --eps 0.01

  # Asymptotic constants for n = 3, k = 6 as JSON
  primrows constants --n 3 --k 6 --format json

  # Brute-force N'_{3,1}(T) for T = 3 on 4 threads
  primrows oracle --n 3 --k 1 --T 3 --primitive --threads 4

  # Convergence table for n = 2, k = 1 up to T = 1000
  primrows converge --k 1 --Tmax 1000 --steps 10 --out converge.csv

  # Exact densities for k = 1..100
  primrows scan --n 4 --kmax 100 > d4.csv

  # Run selected verification suites
  primrows verify --suite identities logconcavity

Notes:
  - Results go to stdout (or --out); status lines and logs go to stderr
  - Defaults come from primrows/config.yaml or $PRIMROWS_CONFIG
  - converge and scan write CSV unless --format is given
  - |k|, --kmax and --p values are capped at 2^64
  - Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded
        """,
    )
    parser.add_argument("--version", action="version", version=f"primrows {__version__}")
    parser.add_argument("--config", type=str, help="Path to a YAML configuration file")
    parser.add_argument(
        "--log-level",
        type=str,
        help="Logging level (DEBUG, INFO, WARNING, ERROR); default from configuration",
    )

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", type=str, help="Write results to this file instead of stdout")
    output.add_argument(
        "--format",
        choices=["csv", "json", "plain"],
        help="Output format (default csv for converge and scan, else from configuration)",
    )

    enumeration = argparse.ArgumentParser(add_help=False)
    enumeration.add_argument("--budget", type=int, help="Enumeration budget override")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    count = subparsers.add_parser(
        "count", parents=[output], help="Orbit counts a_n(k), a'_n(k) and D_n(k)"
    )
    count.add_argument("--n", type=int, required=True, help="Dimension n >= 2")
    count.add_argument("--k", type=int, required=True, help="Nonzero determinant")

    density_parser = subparsers.add_parser(
        "density", parents=[output], help="Exact densities D_n(k), tables and searches"
    )
    density_parser.add_argument("--n", type=int, help="Dimension n >= 2")
    density_parser.add_argument("--k", type=int, help="Determinant (0 gives D_n(0), n >= 3)")
    density_parser.add_argument("--p", type=int, nargs="+", help="Primes for a D_n(p^m) table")
    density_parser.add_argument("--mmax", type=int, dest="m_max", help="Largest exponent m")
    density_parser.add_argument("--target", type=float, help="Find k with -log D_2(k) near this")
    density_parser.add_argument("--eps", type=float, default=0.01, help="Tolerance for --target")
    density_parser.add_argument(
        "--strategy",
        choices=["greedy", "consecutive"],
        default="greedy",
        help="Prime selection for --target (default: greedy)",
    )

    constants = subparsers.add_parser(
        "constants", parents=[output], help="Asymptotic constants with error bounds"
    )
    constants.add_argument("--n", type=int, required=True, help="Dimension n >= 2")
    constants.add_argument("--k", type=int, help="Determinant (default 1; 0 for singular)")

    oracle = subparsers.add_parser(
        "oracle", parents=[output, enumeration], help="Brute-force lattice count in a ball"
    )
    oracle.add_argument("--n", type=int, required=True, help="Dimension n >= 2")
    oracle.add_argument("--k", type=int, required=True, help="Determinant")
    oracle.add_argument("--T", type=str, required=True, help="Radius (decimal or fraction)")
    oracle.add_argument("--primitive", action="store_true", help="Count primitive rows only")
    oracle.add_argument("--fast", action="store_true", help="Use the n = 2 line-by-line count")
    oracle.add_argument("--threads", type=int, help="Worker threads")
    oracle.add_argument(
        "--orbits", action="store_true", help="Split the primitive count by HNF representative"
    )

    converge = subparsers.add_parser(
        "converge", parents=[output, enumeration], help="Convergence table for n = 2"
    )
    converge.add_argument("--n", type=int, help="Dimension (only 2 is supported)")
    converge.add_argument("--k", type=int, required=True, help="Nonzero determinant")
    converge.add_argument("--Tmax", type=str, dest="T_max", required=True, help="Largest radius")
    converge.add_argument("--steps", type=int, default=10, help="Number of radii (default 10)")

    scan = subparsers.add_parser("scan", parents=[output], help="Exact densities for k = 1..kmax")
    scan.add_argument("--n", type=int, required=True, help="Dimension n >= 2")
    scan.add_argument("--kmax", type=int, dest="k_max", required=True, help="Largest k")

    verify = subparsers.add_parser("verify", parents=[output], help="Run verification suites")
    verify.add_argument(
        "--suite",
        dest="suites",
        nargs="+",
        default=[],
        help="Suites to run (default: all); 'all' is accepted",
    )

    return parser.parse_args(argv)


def _build_config(args: argparse.Namespace, default_format: str) -> RunConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if key not in ("config", "log_level") and value is not None
    }
    if values.get("suites") == ["all"]:
        values["suites"] = []
    if "format" not in values:
        values["format"] = "csv" if args.command in CSV_COMMANDS else default_format
    return RunConfig(**values)


@contextmanager
def _config_override(path: Optional[str]) -> Iterator[None]:
    # Library calls read the configuration through PRIMROWS_CONFIG
    if not path:
        yield
        return
    previous = os.environ.get(CONFIG_ENV_VAR)
    os.environ[CONFIG_ENV_VAR] = path
    try:
        yield
    finally:
        if previous is None:
            os.environ.pop(CONFIG_ENV_VAR, None)
        else:
            os.environ[CONFIG_ENV_VAR] = previous


def _dispatch(config: RunConfig, max_primes: int) -> Report:
    if config.command == "count":
        return cmd_count(config)
    if config.command == "density":
        return cmd_density(config, max_primes)
    if config.command == "constants":
        return cmd_constants(config)
    if config.command == "oracle":
        return cmd_oracle(config)
    if config.command == "converge":
        return cmd_converge(config)
    if config.command == "scan":
        return cmd_scan(config)
    return cmd_verify(config)


def _run(args: argparse.Namespace) -> int:
    settings = load_settings()
    logging.basicConfig(
        level=(args.log_level or settings.logging.level).upper(),
        format="[%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    config = _build_config(args, settings.output.format)
    logger.debug(f"Run configuration: {config.model_dump()}")

    report = _dispatch(config, settings.density.max_primes)
    digits = settings.output.significant_digits
    if config.format == "plain" and config.command == "verify":
        # The verify summary is machine-readable unless CSV was asked for
        config = config.model_copy(update={"format": "json"})

    if config.out:
        with open(config.out, "w", newline="") as f:
            write_report(config, report, f, digits)
        print_msg(f"Results saved to: {config.out}", "success")
    else:
        write_report(config, report, sys.stdout, digits)
    return EXIT_OK if report.passed else EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point.

    Args:
        argv: Arguments without the program name (sys.argv[1:] when None)

    Returns:
        Process exit code
    """
    try:
        args = parse_arguments(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return int(exc.code or 0)

    try:
        with _config_override(args.config):
            return _run(args)
    except (ValidationError, ValueError, FileNotFoundError) as e:
        print_msg(f"Invalid input: {e}", "error")
        print_msg(f"Run 'primrows {args.command} --help' for usage", "info")
        return EXIT_USAGE
    except BudgetExceededError as e:
        print_msg(f"Budget exceeded: {e} (budget {e.budget}, needed {e.requested})", "error")
        return EXIT_BUDGET
    except ConsistencyError as e:
        print_msg(f"Consistency check failed: {e}", "error")
        return EXIT_FAILURE
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        print_msg(f"Unexpected error: {e}", "error")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
