# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Exception types raised by primrows.

Precondition violations are plain ValueError. The classes below cover the
cases the CLI needs to tell apart: exhausted resource caps and failed
internal cross-checks.
"""


class PrimrowsError(Exception):
    """Base class for all primrows-specific errors."""


class BudgetExceededError(PrimrowsError, RuntimeError):
    """
    Raised when an enumeration or search would exceed its configured cap.

    Attributes:
        budget: The cap that was hit
        requested: The amount the operation needed (or had consumed when it stopped)
    """

    def __init__(self, message: str, budget: int, requested: int):
        super().__init__(message)
        self.budget = budget
        self.requested = requested


class ConsistencyError(PrimrowsError, ArithmeticError):
    """Raised when two independent evaluations of the same quantity disagree."""
