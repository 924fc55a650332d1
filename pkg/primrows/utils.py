# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Shared output helpers for the CLI, the verification suites and scripts.

Status lines go to stderr so that stdout stays clean for CSV and JSON.
"""

import sys
from fractions import Fraction
from typing import Optional, TextIO, Union

from colorama import Fore, Style, init

init(autoreset=True)


def print_msg(message: str, level: str = "info", stream: Optional[TextIO] = None) -> None:
    """
    Print formatted status message.

    Args:
        message: Message to print
        level: 'success', 'error', 'warning', 'info', or 'section'
        stream: Output stream (stderr by default)
    """
    stream = stream or sys.stderr
    if level == "success":
        print(f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}", file=stream)
    elif level == "error":
        print(f"{Fore.RED}✗ {message}{Style.RESET_ALL}", file=stream)
    elif level == "warning":
        print(f"{Fore.YELLOW}⚠ {message}{Style.RESET_ALL}", file=stream)
    elif level == "info":
        print(f"{Fore.YELLOW}ℹ {message}{Style.RESET_ALL}", file=stream)
    elif level == "section":
        print_section(message, stream=stream)
    else:
        raise ValueError(f"Unknown message level: {level}")


def print_section(title: str, width: int = 60, stream: Optional[TextIO] = None) -> None:
    """Print section header."""
    stream = stream or sys.stderr
    print("\n" + "=" * width, file=stream)
    print(title, file=stream)
    print("=" * width + "\n", file=stream)


def format_fraction(value: Fraction) -> str:
    """
    Render an exact rational as 'numerator/denominator'.

    The denominator is always written, so 1 becomes '1/1'. Fraction('1/1')
    parses the result back to the same value.
    """
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Union[Fraction, float, int], digits: int = 12) -> str:
    """
    Render a number with a fixed count of significant digits.

    Args:
        value: Exact or floating value
        digits: Significant digits

    Returns:
        Decimal string; integral results keep a trailing '.0'
    """
    text = f"{float(value):.{digits}g}"
    if "." not in text and "e" not in text and "inf" not in text and "nan" not in text:
        text += ".0"
    return text
