#!/usr/bin/env python3

# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Convergence Report for 2 x 2 Matrices

Counts N'_{2,k}(T) with the line-by-line n = 2 path for k = 1..4 (or the
values given with --k), compares each count with c'_{2,k} T^2 and writes a
JSON report.
"""

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List

from primrows.cli import RunConfig, cmd_converge
from primrows.errors import BudgetExceededError
from primrows.utils import format_decimal, print_msg, print_section


def measure(k: int, t_max: Fraction, steps: int) -> dict:
    """Ratios N'_{2,k}(T) / (c'_{2,k} T^2) on an evenly spaced grid of T."""
    started = time.perf_counter()
    config = RunConfig(command="converge", k=k, T_max=str(t_max), steps=steps)
    rows = cmd_converge(config).rows
    points = [
        {"T": row["T"], "N": row["N"], "Nprime": row["Nprime"], "ratio": row["ratio"]}
        for row in rows
    ]
    return {
        "k": k,
        "c_prime": rows[-1]["c_prime"],
        "points": points,
        "final_ratio": points[-1]["ratio"],
        "seconds": round(time.perf_counter() - started, 3),
    }


def parse_arguments() -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
        argparse.Namespace: Parsed arguments
    """
    parser = argparse.ArgumentParser(
        description="Convergence of N'_{2,k}(T) / (c'_{2,k} T^2) towards 1",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # k = 1..4 up to T = 1000 in 10 steps
  python3 scripts/convergence-report.py

  # Only k = 6, finer grid, custom output file
  python3 scripts/convergence-report.py --k 6 --tmax 500 --steps 25 --out k6.json

Notes:
  - The final ratio of every k must lie within --tolerance of 1
  - Exit code 1 if any k misses the tolerance, 3 if the budget runs out
        """,
    )
    parser.add_argument("--k", type=int, nargs="+", default=[1, 2, 3, 4], help="Determinants")
    parser.add_argument("--tmax", type=str, default="1000", help="Largest radius T")
    parser.add_argument("--steps", type=int, default=10, help="Number of radii")
    parser.add_argument("--tolerance", type=float, default=0.05, help="Allowed |ratio - 1|")
    parser.add_argument(
        "--out", type=str, default="convergence-report-n2.json", help="Report file"
    )
    return parser.parse_args()


def main():
    """Main entry point."""
    args = parse_arguments()
    t_max = Fraction(args.tmax)
    if t_max <= 0 or args.steps < 1 or any(k == 0 for k in args.k):
        print_msg("Need --tmax > 0, --steps >= 1 and nonzero --k values", "error")
        sys.exit(2)

    print_section(f"N'_(2,k)(T) convergence up to T = {args.tmax}")

    results: List[dict] = []
    for k in args.k:
        try:
            result = measure(k, t_max, args.steps)
        except BudgetExceededError as e:
            print_msg(f"k={k}: {e}", "error")
            sys.exit(3)
        result["within_tolerance"] = abs(result["final_ratio"] - 1) < args.tolerance
        results.append(result)
        message = (
            f"k={k}: c'={format_decimal(result['c_prime'])}, "
            f"final ratio {format_decimal(result['final_ratio'], 6)} ({result['seconds']}s)"
        )
        print_msg(message, "success" if result["within_tolerance"] else "error")

    print_section("Report")
    failed = [r["k"] for r in results if not r["within_tolerance"]]

    with open(args.out, "w") as f:
        json.dump(
            {
                "n": 2,
                "T_max": args.tmax,
                "steps": args.steps,
                "tolerance": args.tolerance,
                "results": results,
            },
            f,
            indent=2,
        )
    print_msg(f"Detailed report saved to: {args.out}", "success")

    if failed:
        print_msg(f"{len(failed)} value(s) of k outside tolerance: {failed}", "warning")
        sys.exit(1)
    print_msg("All ratios within tolerance", "success")


if __name__ == "__main__":
    main()
