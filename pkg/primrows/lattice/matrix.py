# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Square integer matrices with exact determinants.

IntMatrix is immutable and holds plain Python ints, so products and
determinants never overflow.
"""

import logging
import random
from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """
    Square n x n integer matrix stored row-major.

    Attributes:
        rows: n rows of n integers each (n >= 1)
    """

    rows: Tuple[Row, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if not rows:
            raise ValueError("IntMatrix needs at least one row")
        if any(len(row) != len(rows) for row in rows):
            raise ValueError(f"IntMatrix must be square, got row lengths {[len(r) for r in rows]}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(rows=tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        if n < 1:
            raise ValueError(f"Dimension must be >= 1, got {n}")
        return cls(rows=tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return matmul(self, other)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(rows=tuple(zip(*self.rows)))

    def negate_row(self, i: int) -> "IntMatrix":
        """Return a copy with row i negated (flips the sign of det)."""
        return IntMatrix(
            rows=tuple(tuple(-x for x in row) if r == i else row for r, row in enumerate(self.rows))
        )

    def det(self, method: str = "bareiss") -> int:
        return det(self, method)

    def norm_sq(self) -> int:
        return norm_sq(self)

    def rows_primitive(self) -> bool:
        return all(is_primitive(row) for row in self.rows)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, row)) + "]" for row in self.rows) + "]"


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact product a @ b."""
    if a.n != b.n:
        raise ValueError(f"Dimension mismatch: {a.n} vs {b.n}")
    columns = list(zip(*b.rows))
    return IntMatrix(
        rows=tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in columns) for row in a.rows)
    )


def _det_bareiss(a: IntMatrix) -> int:
    m: List[List[int]] = [list(row) for row in a.rows]
    n = a.n
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact by Sylvester's identity
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def _permutation_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det_cofactor(a: IntMatrix) -> int:
    if a.n > 4:
        raise ValueError(f"Cofactor expansion is limited to n <= 4, got n={a.n}")
    total = 0
    for perm in permutations(range(a.n)):
        term = _permutation_sign(perm)
        for i, j in enumerate(perm):
            term *= a.rows[i][j]
        total += term
    return total


def det(a: IntMatrix, method: str = "bareiss") -> int:
    """
    Exact determinant.

    Args:
        a: Square integer matrix
        method: 'bareiss' (fraction-free elimination) or 'cofactor'
            (Leibniz expansion, n <= 4 only; kept as a cross-check)

    Returns:
        det(a) as a Python int
    """
    if method == "bareiss":
        return _det_bareiss(a)
    if method == "cofactor":
        return _det_cofactor(a)
    raise ValueError(f"Unknown determinant method: {method}")


def norm_sq(a: IntMatrix) -> int:
    """Squared Frobenius norm, the sum of a_ij^2."""
    return sum(x * x for row in a.rows for x in row)


def trace_gram(a: IntMatrix) -> int:
    """Trace of a^T a; equals norm_sq(a)."""
    gram = matmul(a.transpose(), a)
    return sum(gram.rows[i][i] for i in range(a.n))


def is_primitive(v: Iterable[int]) -> bool:
    """True iff gcd of the entries is 1; the zero vector is not primitive."""
    return gcd(*v) == 1


def random_matrix(n: int, rng: random.Random, bound: int) -> IntMatrix:
    """Uniform entries in [-bound, bound]."""
    return IntMatrix(
        rows=tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n))
    )


def random_unimodular(n: int, rng: random.Random, steps: int = 20, bound: int = 3) -> IntMatrix:
    """
    Random matrix of determinant 1.

    Built as a product of elementary column operations col_j += q col_i with
    |q| <= bound, each of which has determinant 1.

    Args:
        n: Dimension >= 1
        rng: Seeded random source
        steps: Number of elementary operations
        bound: Largest multiplier

    Returns:
        IntMatrix with det == 1
    """
    m = [list(row) for row in IntMatrix.identity(n).rows]
    if n == 1:
        return IntMatrix.from_rows(m)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-bound, bound)
        for row in m:
            row[j] += q * row[i]
    return IntMatrix.from_rows(m)
