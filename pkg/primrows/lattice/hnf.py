# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Lower Hermite normal forms.

A matrix C is in (lower) Hermite normal form when it is lower triangular with
positive diagonal and 0 <= c_ij < c_ii for every j < i. Each right
SL_n(Z)-orbit of a matrix with positive determinant contains exactly one such
C, so the HNFs of determinant k enumerate the orbits: there are a_n(k) of them,
and a'_n(k) with primitive rows.
"""

import logging
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Iterator, List, Tuple

from primrows.arith import ordered_factorizations
from primrows.config import load_settings
from primrows.errors import BudgetExceededError
from primrows.lattice.matrix import IntMatrix, det
from primrows.orbits import a, a_prime

logger = logging.getLogger(__name__)


def is_hnf(c: IntMatrix) -> bool:
    """True iff c is lower triangular with c_ii > 0 and 0 <= c_ij < c_ii for j < i."""
    for i, row in enumerate(c.rows):
        if row[i] <= 0:
            return False
        if any(x != 0 for x in row[i + 1 :]):
            return False
        if any(not 0 <= x < row[i] for x in row[:i]):
            return False
    return True


def _add_column_multiple(m: List[List[int]], target: int, source: int, q: int) -> None:
    # col_target -= q * col_source
    for row in m:
        row[target] -= q * row[source]


def _rotate_columns(m: List[List[int]], i: int, j: int) -> None:
    # (col_i, col_j) -> (col_j, -col_i); determinant 1
    for row in m:
        row[i], row[j] = row[j], -row[i]


def _negate_columns(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = -row[i], -row[j]


def hnf_reduce(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    Reduce a matrix to Hermite normal form by unimodular column operations.

    Row by row, the entries right of the diagonal are cleared with a column
    Euclidean algorithm, a negative diagonal is fixed by negating two columns
    at once, and the entries left of the diagonal are reduced modulo it. Only
    determinant-one operations are used, so the transform stays in SL_n(Z).

    Args:
        matrix: Square integer matrix with det > 0 (negate a row first for
            a negative determinant)

    Returns:
        (C, X) with C in Hermite normal form, det(X) = 1 and matrix @ X = C

    Raises:
        ValueError: If det(matrix) <= 0
    """
    determinant = det(matrix)
    if determinant == 0:
        raise ValueError(f"Cannot reduce a singular matrix: {matrix}")
    if determinant < 0:
        raise ValueError(f"hnf_reduce needs det > 0, got {determinant}; negate a row first")

    n = matrix.n
    c = [list(row) for row in matrix.rows]
    x = [list(row) for row in IntMatrix.identity(n).rows]

    for i in range(n):
        for j in range(i + 1, n):
            while c[i][j] != 0:
                q = c[i][i] // c[i][j]
                _add_column_multiple(c, i, j, q)
                _add_column_multiple(x, i, j, q)
                _rotate_columns(c, i, j)
                _rotate_columns(x, i, j)
        if c[i][i] < 0:
            # The last diagonal is positive because det(C) = det(matrix) > 0
            _negate_columns(c, i, i + 1)
            _negate_columns(x, i, i + 1)
        for j in range(i):
            q = c[i][j] // c[i][i]
            if q:
                _add_column_multiple(c, j, i, q)
                _add_column_multiple(x, j, i, q)

    reduced = IntMatrix.from_rows(c)
    transform = IntMatrix.from_rows(x)
    logger.debug(f"hnf_reduce({matrix}) -> {reduced}")
    return reduced, transform


@lru_cache(maxsize=4096)
def _row_prefixes(i: int, d: int, primitive_only: bool) -> Tuple[Tuple[int, ...], ...]:
    # Entries left of the diagonal for row i (0-based) with diagonal d
    prefixes = product(range(d), repeat=i)
    if primitive_only:
        return tuple(prefix for prefix in prefixes if gcd(*prefix, d) == 1)
    return tuple(prefixes)


def _check_args(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"Dimension n must be >= 1, got {n}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")


def enumerate_hnf(n: int, k: int, primitive_only: bool = False) -> Iterator[IntMatrix]:
    """
    Stream every lower HNF of size n and determinant k.

    Diagonals run over ordered factorizations of k in lexicographic order; within
    a diagonal, rows vary like an odometer with the last row fastest.

    Args:
        n: Dimension >= 1
        k: Determinant >= 1
        primitive_only: Keep only matrices whose rows are all primitive

    Returns:
        Iterator over IntMatrix; a(n, k) resp. a_prime(n, k) items

    Raises:
        BudgetExceededError: If the stream would exceed enumeration.hnf_budget
    """
    _check_args(n, k)
    budget = load_settings().enumeration.hnf_budget
    expected = a_prime(n, k) if primitive_only and n >= 2 else a(n, k)
    if expected > budget:
        raise BudgetExceededError(
            f"enumerate_hnf({n}, {k}) would yield {expected} matrices (budget {budget})",
            budget=budget,
            requested=expected,
        )
    return _enumerate_hnf(n, k, primitive_only)


def _enumerate_hnf(n: int, k: int, primitive_only: bool) -> Iterator[IntMatrix]:
    for diagonal in ordered_factorizations(k, n):
        choices = [_row_prefixes(i, d, primitive_only) for i, d in enumerate(diagonal)]
        for prefixes in product(*choices):
            yield IntMatrix(
                rows=tuple(
                    prefix + (d,) + (0,) * (n - i - 1)
                    for i, (prefix, d) in enumerate(zip(prefixes, diagonal))
                )
            )


@lru_cache(maxsize=4096)
def _row_choice_count(i: int, d: int, primitive_only: bool) -> int:
    if not primitive_only:
        return d**i
    return sum(1 for prefix in product(range(d), repeat=i) if gcd(*prefix, d) == 1)


def hnf_count(n: int, k: int, primitive_only: bool = False) -> int:
    """
    Length of enumerate_hnf(n, k, primitive_only) without building matrices.

    Primitive row choices are counted by brute force (a gcd test on every
    candidate row), independently of the orbit-count formulas.
    """
    _check_args(n, k)
    return sum(
        prod(_row_choice_count(i, d, primitive_only) for i, d in enumerate(diagonal))
        for diagonal in ordered_factorizations(k, n)
    )
