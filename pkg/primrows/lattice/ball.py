# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Counting integer matrices of fixed determinant in a Euclidean ball.

N_{n,k}(T) is the number of integer n x n matrices A with ||A||^2 <= T^2 and
det A = k; N'_{n,k}(T) keeps those whose rows are all primitive. The ball is
closed and the comparison is exact: T^2 is a Fraction and ||A||^2 an int.

count_ball is the generic brute-force oracle. Rows are generated inside
shrinking disks, the last row is solved for from the determinant equation,
and the range of the very first entry is split into chunks that run on a
thread pool. Chunk totals are added up, so the count does not depend on the
thread count or on scheduling.

count_ball_fast_n2 counts 2 x 2 matrices by lattice-line arithmetic and is
fast enough for T in the thousands.
"""

import logging
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import floor, gcd, isqrt, prod
from typing import Dict, Iterator, List, Optional, Tuple, Union

from sympy.ntheory.modular import crt

from primrows.arith import factorize
from primrows.config import load_settings
from primrows.errors import BudgetExceededError
from primrows.lattice.hnf import enumerate_hnf, hnf_reduce
from primrows.lattice.matrix import IntMatrix, det, is_primitive

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]
Rows = Tuple[Row, ...]

# Visits are reported to the shared meter in batches of this size
_FLUSH_EVERY = 4096


@dataclass(frozen=True)
class BallQuery:
    """
    One counting question N_{n,k}(T) or N'_{n,k}(T).

    Attributes:
        n: Dimension >= 2
        k: Determinant target (any integer; 0 counts singular matrices)
        T_sq: Squared radius as an exact rational >= 0
        primitive_only: Count only matrices with primitive rows
    """

    n: int
    k: int
    T_sq: Fraction
    primitive_only: bool = False

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"Dimension n must be >= 2, got {self.n}")
        t_sq = Fraction(self.T_sq)
        if t_sq < 0:
            raise ValueError(f"T_sq must be non-negative, got {self.T_sq}")
        object.__setattr__(self, "T_sq", t_sq)

    @classmethod
    def from_radius(
        cls, n: int, k: int, radius: Union[str, int, Fraction], primitive_only: bool = False
    ) -> "BallQuery":
        """Build a query from T itself; decimal strings such as '31.6' stay exact."""
        t = Fraction(radius)
        return cls(n=n, k=k, T_sq=t * t, primitive_only=primitive_only)

    @property
    def norm_bound(self) -> int:
        """Largest integer norm_sq inside the closed ball."""
        return floor(self.T_sq)


class _VisitMeter:
    """Thread-safe candidate-visit counter enforcing the enumeration budget."""

    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.visits = 0
        self._lock = threading.Lock()

    def add(self, count: int) -> None:
        with self._lock:
            self.visits += count
            visits = self.visits
        if visits > self.budget:
            raise BudgetExceededError(
                f"Enumeration exceeded its budget of {self.budget} candidate visits",
                budget=self.budget,
                requested=visits,
            )


class _LocalMeter:
    def __init__(self, shared: _VisitMeter) -> None:
        self.shared = shared
        self.pending = 0

    def tick(self) -> None:
        self.pending += 1
        if self.pending >= _FLUSH_EVERY:
            self.flush()

    def flush(self) -> None:
        if self.pending:
            self.shared.add(self.pending)
            self.pending = 0


def _vectors_in_disk(
    dim: int, bound: int, first_range: Optional[Tuple[int, int]] = None
) -> Iterator[Tuple[Row, int]]:
    # (vector, norm_sq) for integer vectors with norm_sq <= bound, odometer order
    prefix: List[int] = []

    def extend(remaining: int) -> Iterator[Tuple[Row, int]]:
        if len(prefix) == dim:
            yield tuple(prefix), bound - remaining
            return
        reach = isqrt(remaining)
        lo, hi = -reach, reach
        if first_range is not None and not prefix:
            lo, hi = max(lo, first_range[0]), min(hi, first_range[1])
        for x in range(lo, hi + 1):
            prefix.append(x)
            yield from extend(remaining - x * x)
            prefix.pop()

    return extend(bound)


def _last_row_cofactors(rows: Rows) -> List[int]:
    # det = sum_j x_j * cofactor_j for a last row x
    n = len(rows) + 1
    if n == 2:
        return [-rows[0][1], rows[0][0]]
    cofactors = []
    for j in range(n):
        minor = IntMatrix(rows=tuple(row[:j] + row[j + 1 :] for row in rows))
        cofactors.append((-1) ** (n - 1 + j) * det(minor))
    return cofactors


def _last_rows(
    query: BallQuery, rows: Rows, remaining: int, meter: _LocalMeter
) -> Iterator[Rows]:
    n = query.n
    cofactors = _last_row_cofactors(rows)
    if not any(cofactors):
        if query.k != 0:
            return
        for row, _ in _vectors_in_disk(n, remaining):
            meter.tick()
            if query.primitive_only and not is_primitive(row):
                continue
            yield rows + (row,)
        return

    pivot = max(range(n), key=lambda j: abs(cofactors[j]))
    pivot_cofactor = cofactors[pivot]
    others = [cofactors[j] for j in range(n) if j != pivot]
    for partial, used in _vectors_in_disk(n - 1, remaining):
        meter.tick()
        residual = query.k - sum(c * x for c, x in zip(others, partial))
        if residual % pivot_cofactor:
            continue
        x = residual // pivot_cofactor
        if used + x * x > remaining:
            continue
        row = partial[:pivot] + (x,) + partial[pivot:]
        if query.primitive_only and not is_primitive(row):
            continue
        yield rows + (row,)


def _matrices(
    query: BallQuery, first_range: Optional[Tuple[int, int]], meter: _LocalMeter
) -> Iterator[Rows]:
    n = query.n

    def extend(rows: Rows, remaining: int) -> Iterator[Rows]:
        if len(rows) == n - 1:
            yield from _last_rows(query, rows, remaining, meter)
            return
        candidates = _vectors_in_disk(n, remaining, first_range if not rows else None)
        for row, used in candidates:
            meter.tick()
            if query.primitive_only and not is_primitive(row):
                continue
            if query.k != 0 and not any(row):
                continue
            yield from extend(rows + (row,), remaining - used)

    return extend((), query.norm_bound)


def _check_query(query: BallQuery) -> None:
    max_dimension = load_settings().enumeration.max_dimension
    if query.n > max_dimension:
        raise ValueError(
            f"Generic ball enumeration is limited to n <= {max_dimension}, got n={query.n}"
        )
    max_norm_sq = load_settings().enumeration.max_norm_sq
    if query.norm_bound > max_norm_sq:
        raise ValueError(f"T_sq={query.T_sq} exceeds the configured cap {max_norm_sq}")


def iter_ball(
    query: BallQuery,
    first_entry_range: Optional[Tuple[int, int]] = None,
    budget: Optional[int] = None,
) -> Iterator[IntMatrix]:
    """
    Stream the matrices counted by count_ball, in odometer order.

    Args:
        query: What to enumerate
        first_entry_range: Inclusive (lo, hi) restriction on the entry a_11
        budget: Candidate-visit cap (config default)

    Returns:
        Iterator over IntMatrix

    Raises:
        BudgetExceededError: Once more candidates than budget were visited
    """
    _check_query(query)
    if budget is None:
        budget = load_settings().enumeration.budget
    meter = _LocalMeter(_VisitMeter(budget))
    for rows in _matrices(query, first_entry_range, meter):
        yield IntMatrix(rows=rows)
    meter.flush()


def _count_chunk(query: BallQuery, first_range: Tuple[int, int], shared: _VisitMeter) -> int:
    meter = _LocalMeter(shared)
    count = sum(1 for _ in _matrices(query, first_range, meter))
    meter.flush()
    return count


def _chunks(reach: int, pieces: int) -> List[Tuple[int, int]]:
    values = 2 * reach + 1
    pieces = max(1, min(pieces, values))
    size, extra = divmod(values, pieces)
    chunks = []
    start = -reach
    for i in range(pieces):
        stop = start + size + (1 if i < extra else 0)
        chunks.append((start, stop - 1))
        start = stop
    return chunks


def count_ball(
    query: BallQuery, threads: Optional[int] = None, budget: Optional[int] = None
) -> int:
    """
    Count N_{n,k}(T) (or N'_{n,k}(T)) by brute-force enumeration.

    Args:
        query: n in 2..enumeration.max_dimension, any k, exact T_sq
        threads: Worker threads (config default); the result does not depend on it
        budget: Candidate-visit cap (config default)

    Returns:
        Exact number of matrices in the closed ball

    Raises:
        ValueError: If n or T_sq exceed the configured caps
        BudgetExceededError: If the enumeration visits more candidates than budget
    """
    _check_query(query)
    settings = load_settings()
    threads = threads or settings.enumeration.threads
    meter = _VisitMeter(budget or settings.enumeration.budget)
    chunks = _chunks(isqrt(query.norm_bound), threads * 4)
    logger.info(
        f"count_ball n={query.n} k={query.k} T_sq={query.T_sq} "
        f"primitive={query.primitive_only}: {len(chunks)} chunks on {threads} threads"
    )

    if threads == 1:
        total = sum(_count_chunk(query, chunk, meter) for chunk in chunks)
    else:
        total = 0
        with ThreadPoolExecutor(max_workers=threads) as executor:
            futures = {
                executor.submit(_count_chunk, query, chunk, meter): chunk for chunk in chunks
            }
            for future in as_completed(futures):
                chunk = futures[future]
                count = future.result()
                logger.debug(f"Chunk {chunk}: {count} matrices")
                total += count

    logger.info(f"count_ball finished: {total} matrices, {meter.visits} candidate visits")
    return total


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    # (g, s, t) with a*s + b*t = g >= 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _line_parameter_range(
    c0: int, d0: int, alpha: int, beta: int, remaining: int
) -> Optional[Tuple[int, int]]:
    # Integers t with (c0 + t alpha)^2 + (d0 + t beta)^2 <= remaining
    lead = alpha * alpha + beta * beta
    middle = c0 * alpha + d0 * beta
    const = c0 * c0 + d0 * d0

    def inside(t: int) -> bool:
        return lead * t * t + 2 * middle * t + const <= remaining

    disc = middle * middle - lead * (const - remaining)
    if disc < 0:
        return None
    root = isqrt(disc)
    lo = -((middle + root) // lead)
    hi = (root - middle) // lead
    while inside(lo - 1):
        lo -= 1
    while inside(hi + 1):
        hi += 1
    if lo > hi:
        return None
    return lo, hi


def _progression_count(lo: int, hi: int, residue: int, modulus: int) -> int:
    return (hi - residue) // modulus - (lo - 1 - residue) // modulus


def _primitive_on_line(
    c0: int, d0: int, alpha: int, beta: int, lo: int, hi: int, primes: Tuple[int, ...]
) -> int:
    # Mobius sum over squarefree e | k of #{t : e | gcd(c, d)}
    residues: Dict[int, int] = {}
    for q in primes:
        # With ad - bc = k and q | k, q | c forces q | d when q does not divide a
        if alpha % q:
            residues[q] = (-c0 * pow(alpha, -1, q)) % q
        else:
            residues[q] = (-d0 * pow(beta, -1, q)) % q

    total = 0
    for size in range(len(primes) + 1):
        sign = -1 if size % 2 else 1
        for subset in combinations(primes, size):
            if not subset:
                total += hi - lo + 1
                continue
            modulus = prod(subset)
            residue, _ = crt(list(subset), [residues[q] for q in subset])
            total += sign * _progression_count(lo, hi, int(residue), modulus)
    return total


def count_ball_fast_n2(query: BallQuery, budget: Optional[int] = None) -> int:
    """
    Count 2 x 2 matrices of determinant k in a closed ball, line by line.

    Right multiplication by the rotation [[0, -1], [1, 0]] keeps the
    determinant, the norm and row primitivity, and moves the first row (a, b)
    through its four quarter-turns. So only first rows with a > 0, b >= 0 are
    visited and the total is multiplied by 4. For each of them the second rows
    (c, d) with ad - bc = k lie on the lattice line (c0, d0) + t (a, b)/g,
    g = gcd(a, b), and the admissible t form an interval found with an integer
    square root. Primitivity of the second row is handled by inclusion and
    exclusion over the squarefree divisors of k.

    Args:
        query: BallQuery with n = 2 and k != 0
        budget: Cap on visited first rows (config default)

    Returns:
        Same value as count_ball(query)

    Raises:
        ValueError: If n != 2 or k == 0
    """
    if query.n != 2:
        raise ValueError(f"count_ball_fast_n2 needs n = 2, got n={query.n}")
    if query.k == 0:
        raise ValueError("count_ball_fast_n2 needs k != 0")
    if budget is None:
        budget = load_settings().enumeration.budget

    k = query.k
    bound = query.norm_bound
    primes = factorize(abs(k)).primes
    visits = 0
    total = 0
    for a in range(1, isqrt(bound) + 1):
        for b in range(0, isqrt(bound - a * a) + 1):
            visits += 1
            g = gcd(a, b)
            if k % g or (query.primitive_only and g != 1):
                continue
            _, s, t = _extended_gcd(a, b)
            c0, d0 = -t * (k // g), s * (k // g)
            alpha, beta = a // g, b // g
            span = _line_parameter_range(c0, d0, alpha, beta, bound - a * a - b * b)
            if span is None:
                continue
            lo, hi = span
            if query.primitive_only:
                total += _primitive_on_line(c0, d0, alpha, beta, lo, hi, primes)
            else:
                total += hi - lo + 1
        if visits > budget:
            raise BudgetExceededError(
                f"Fast n=2 count exceeded its budget of {budget} first rows",
                budget=budget,
                requested=visits,
            )
    return 4 * total


def orbit_classes(n: int, k: int, T_sq: Union[Fraction, int]) -> Counter:
    """
    Tally the primitive-row matrices of N'_{n,k}(T) by their Hermite normal form.

    Returns:
        Counter mapping each occurring HNF representative to its class size
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    query = BallQuery(n=n, k=k, T_sq=Fraction(T_sq), primitive_only=True)
    classes: Counter = Counter()
    for matrix in iter_ball(query):
        reduced, _ = hnf_reduce(matrix)
        classes[reduced] += 1
    return classes


def _count_by_row_choice(query: BallQuery) -> int:
    # Rows are picked from the short vectors and det is tested; no row is solved for
    vectors = sorted(
        (used, row)
        for row, used in _vectors_in_disk(query.n, query.norm_bound)
        if any(row) and (not query.primitive_only or is_primitive(row))
    )
    units = [tuple(int(i == j) for i in range(query.n)) for j in range(query.n)]

    def extend(rows: List[Row], room: int) -> int:
        if len(rows) == query.n - 1:
            # det is linear in the last row: its coefficients are det(rows + e_j)
            weights = [det(IntMatrix(rows=tuple(rows + [e]))) for e in units]
            return sum(
                1
                for size, v in vectors
                if size <= room and sum(w * x for w, x in zip(weights, v)) == query.k
            )
        total = 0
        for size, v in vectors:
            if size > room:
                break
            total += extend(rows + [v], room - size)
        return total

    return extend([], query.norm_bound)


def orbit_decomposition_check(n: int, k: int, T_sq: Union[Fraction, int]) -> bool:
    """
    Check that N'_{n,k}(T) splits over the orbits of the primitive HNFs.

    Every primitive-row matrix in the ball is reduced to its HNF. The check
    passes iff the class sizes add up to an independent count of N'_{n,k}(T)
    (line arithmetic for n = 2, a row-by-row search with a det test otherwise)
    and every representative is one of enumerate_hnf(n, k, primitive_only=True).

    Args:
        n: Dimension (2, or 3 with a tiny radius)
        k: Positive determinant
        T_sq: Squared radius

    Returns:
        True iff the decomposition is consistent
    """
    classes = orbit_classes(n, k, T_sq)
    query = BallQuery(n=n, k=k, T_sq=Fraction(T_sq), primitive_only=True)
    expected = count_ball_fast_n2(query) if n == 2 else _count_by_row_choice(query)
    representatives = set(enumerate_hnf(n, k, primitive_only=True))
    total = sum(classes.values())
    unknown = [c for c in classes if c not in representatives]
    if total != expected or unknown:
        logger.warning(
            f"Orbit decomposition mismatch for n={n} k={k} T_sq={T_sq}: "
            f"classes sum to {total}, expected {expected}, {len(unknown)} unknown representatives"
        )
        return False
    logger.info(
        f"Orbit decomposition n={n} k={k} T_sq={T_sq}: {len(classes)} classes, {total} matrices"
    )
    return True
