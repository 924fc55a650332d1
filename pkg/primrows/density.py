# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Density of primitive-row matrices.

D_n(k) = a'_n(k) / a_n(k) is kept as an exact Fraction. This module also
holds the integer-sequence toolkit used to study m -> a'_n(p^m): discrete
convolution, the sequences M and P_i, the three-part decomposition of
w_r^2 - w_{r-1} w_{r+1} for w = u * v, and log-concavity tests.

Floats only appear where a value has to be compared with a logarithm or a
zeta value (density_zero, density_image_gap, find_k_for_density).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy import nextprime

from primrows.arith import factorize, require_prime
from primrows.asymptotics import zeta_int
from primrows.config import load_settings
from primrows.errors import BudgetExceededError, ConsistencyError
from primrows.orbits import a_prime_local, orbit_counts

logger = logging.getLogger(__name__)

# Exact density value in (0, 1]
DensityValue = Fraction


@dataclass(frozen=True)
class IntSeq:
    """
    Finite prefix (u_0, u_1, ...) of an integer sequence indexed from 0.

    Attributes:
        terms: The known terms; at least one
    """

    terms: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.terms) < 1:
            raise ValueError("IntSeq needs at least one term")
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))

    @classmethod
    def of(cls, *terms: int) -> "IntSeq":
        return cls(terms=tuple(terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, r: int) -> int:
        return self.terms[r]

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)


def _check_dimension(n: int, minimum: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise ValueError(f"Dimension n must be an integer >= {minimum}, got {n!r}")


def density(n: int, k: int) -> DensityValue:
    """
    Exact density D_n(k) = a'_n(|k|) / a_n(|k|).

    Args:
        n: Dimension >= 2
        k: Nonzero integer

    Returns:
        Reduced Fraction in (0, 1]

    Raises:
        ValueError: If k == 0 (see density_zero) or n < 2
    """
    _check_dimension(n, 2)
    if k == 0:
        raise ValueError("density(n, 0) is not a ratio of orbit counts; use density_zero(n)")
    a_n, a_prime_n = orbit_counts(n, k)
    return Fraction(a_prime_n, a_n)


def density_local_n2(p: int, m: int) -> DensityValue:
    """D_2(p^m) = (1 - 1/p)^2 / (1 - 1/p^{m+1}) for m >= 1, and 1 for m = 0."""
    require_prime(p)
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ValueError(f"Exponent m must be a non-negative integer, got {m!r}")
    if m == 0:
        return Fraction(1)
    return (1 - Fraction(1, p)) ** 2 / (1 - Fraction(1, p ** (m + 1)))


def density_prime_limit(n: int, p: int) -> Fraction:
    """
    Limit of D_n(p^m) as m grows, for n >= 3.

    Args:
        n: Dimension >= 3
        p: Prime

    Returns:
        (1 - p^{1-n})^n as an exact Fraction

    Raises:
        ValueError: If n < 3 (the n = 2 limit is density_prime_limit_n2)
    """
    if n == 2:
        raise ValueError("The n = 2 limit is (1 - 1/p)^2; use density_prime_limit_n2")
    _check_dimension(n, 3)
    require_prime(p)
    return (1 - Fraction(1, p ** (n - 1))) ** n


def density_prime_limit_n2(p: int) -> Fraction:
    """Limit of D_2(p^m) as m grows: (1 - 1/p)^2."""
    require_prime(p)
    return (1 - Fraction(1, p)) ** 2


def density_zero(n: int) -> float:
    """
    Density of primitive-row matrices among singular ones, 1/zeta(n-1)^n.

    Raises:
        ValueError: If n < 3 (there is no finite D_2(0))
    """
    _check_dimension(n, 3)
    return 1.0 / zeta_int(n - 1) ** n


def density_lower_bound(n: int, k: int) -> Fraction:
    """
    Product of the local limits (1 - p^{1-n})^n over primes p dividing k.

    D_n(k) is strictly above this value for n >= 3 and |k| >= 2.
    """
    _check_dimension(n, 3)
    if k == 0:
        raise ValueError("k must be nonzero")
    bound = Fraction(1)
    for p in factorize(abs(k)).primes:
        bound *= density_prime_limit(n, p)
    return bound


def density_n2_bounds(k: int) -> Tuple[Fraction, Fraction]:
    """
    Bracket D_2(k) by the product phi(k)/k.

    Args:
        k: Nonzero integer

    Returns:
        (lower, upper) = ((phi(k)/k)^2, phi(k)/k) with lower < D_2(k) <= upper,
        both strict once |k| >= 2
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    ratio = Fraction(1)
    for p in factorize(abs(k)).primes:
        ratio *= 1 - Fraction(1, p)
    return ratio**2, ratio


def totally_divisible_limit(n: int, primes: Sequence[int]) -> Fraction:
    """
    Limit of D_n along k = (p_1 ... p_r)^m as m grows.

    Args:
        n: Dimension >= 2
        primes: Distinct primes making up k

    Returns:
        Product of the per-prime limits
    """
    _check_dimension(n, 2)
    if len(set(primes)) != len(primes):
        raise ValueError(f"Primes must be distinct, got {list(primes)}")
    limit = Fraction(1)
    for p in primes:
        limit *= density_prime_limit_n2(p) if n == 2 else density_prime_limit(n, p)
    return limit


def seq_convolve(u: IntSeq, v: IntSeq) -> IntSeq:
    """
    Discrete convolution (u * v)_r = sum_{j <= r} u_{r-j} v_j.

    The result has min(len(u), len(v)) terms: exactly the indices for which
    every contributing term is known.
    """
    length = min(len(u), len(v))
    return IntSeq(
        terms=tuple(sum(u[r - j] * v[j] for j in range(r + 1)) for r in range(length))
    )


def mobius_seq(length: int) -> IntSeq:
    """The sequence M = (1, -1, 0, 0, ...) truncated to length terms."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    return IntSeq(terms=((1, -1) + (0,) * length)[:length])


def geometric_seq(p: int, i: int, length: int) -> IntSeq:
    """The sequence P_i = (1, p^i, p^{2i}, ...) truncated to length terms."""
    require_prime(p)
    if i < 0:
        raise ValueError(f"Exponent i must be >= 0, got {i}")
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    return IntSeq(terms=tuple(p ** (i * r) for r in range(length)))


def a_prime_sequence(n: int, p: int, length: int) -> IntSeq:
    """The sequence m -> a'_n(p^m) for m = 0 .. length - 1."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    return IntSeq(terms=tuple(a_prime_local(n, p, m) for m in range(length)))


def a_prime_sequence_by_convolution(n: int, p: int, length: int) -> IntSeq:
    """
    The sequence m -> a'_n(p^m) built as (M * P_{n-1}) * ... * (M * P_0).

    Args:
        n: Dimension >= 2
        p: Prime
        length: Number of terms

    Returns:
        IntSeq equal to a_prime_sequence(n, p, length)
    """
    _check_dimension(n, 2)
    mu = mobius_seq(length)
    factors = [seq_convolve(mu, geometric_seq(p, i, length)) for i in range(n - 1, -1, -1)]
    return reduce(seq_convolve, factors)


def menon_decompose(u: IntSeq, v: IntSeq, r: int) -> Tuple[int, int, int]:
    """
    Split w_r^2 - w_{r-1} w_{r+1} for w = u * v into three sums.

    I   = sum_{0 <= i < j <= r-1} (v_j v_{i+1} - v_{j+1} v_i)(u_{r-j} u_{r-i-1} - u_{r-1-j} u_{r-i})
    II  = sum_{j=0}^{r-1} v_j (u_{r-j} u_r - u_{r-1-j} u_{r+1})
    III = v_r u_r + sum_{j=0}^{r-1} u_j (v_r v_{r-j} - v_{r+1} v_{r-1-j})

    Every factor is non-negative when u and v are positive and log-concave.

    Args:
        u: Sequence with u_0 = 1
        v: Sequence with v_0 = 1
        r: Index >= 1; both sequences need the term r + 1

    Returns:
        Tuple (I, II, III)

    Raises:
        ValueError: If u_0 != 1, v_0 != 1, r < 1 or a sequence is too short
    """
    if u[0] != 1 or v[0] != 1:
        raise ValueError(f"Both sequences must start with 1, got u_0={u[0]}, v_0={v[0]}")
    if r < 1:
        raise ValueError(f"Index r must be >= 1, got {r}")
    if min(len(u), len(v)) < r + 2:
        raise ValueError(f"Sequences need at least {r + 2} terms for r={r}")

    part_one = sum(
        (v[j] * v[i + 1] - v[j + 1] * v[i]) * (u[r - j] * u[r - i - 1] - u[r - 1 - j] * u[r - i])
        for i in range(r)
        for j in range(i + 1, r)
    )
    part_two = sum(v[j] * (u[r - j] * u[r] - u[r - 1 - j] * u[r + 1]) for j in range(r))
    part_three = v[r] * u[r] + sum(
        u[j] * (v[r] * v[r - j] - v[r + 1] * v[r - 1 - j]) for j in range(r)
    )
    return part_one, part_two, part_three


def log_concavity_defect(u: IntSeq, r: int) -> int:
    """u_r^2 - u_{r-1} u_{r+1}; non-negative at every interior r for a log-concave u."""
    return u[r] * u[r] - u[r - 1] * u[r + 1]


def is_log_concave(u: IntSeq) -> Tuple[bool, Optional[int]]:
    """
    Test u_r^2 - u_{r-1} u_{r+1} >= 0 at every interior index.

    Equality counts as log-concave. Sequences with fewer than three terms have
    no interior index and pass.

    Returns:
        (True, None) or (False, smallest violating r)
    """
    for r in range(1, len(u) - 1):
        if log_concavity_defect(u, r) < 0:
            return False, r
    return True, None


def density_monotone_check(n: int, p: int, max_exponent: int) -> bool:
    """
    Check D_n(p^0) > D_n(p^1) > ... > D_n(p^M) with exact comparisons.

    Args:
        n: Dimension >= 2
        p: Prime
        max_exponent: M >= 1

    Returns:
        True iff the chain is strictly decreasing
    """
    _check_dimension(n, 2)
    require_prime(p)
    if max_exponent < 1:
        raise ValueError(f"Max exponent must be >= 1, got {max_exponent}")
    values = [density(n, p**m) for m in range(max_exponent + 1)]
    for m, (before, after) in enumerate(zip(values, values[1:]), start=1):
        if not after < before:
            logger.info(f"D_{n}({p}^{m}) = {after} is not below D_{n}({p}^{m - 1}) = {before}")
            return False
    return True


class ImageGap(NamedTuple):
    """Values compared to show the image of D_n misses an interval."""

    odd_lower_bound: float
    d_at_2: Fraction
    gap_holds: bool


def density_image_gap(n: int) -> ImageGap:
    """
    Compare the infimum of D_n over odd k with D_n(2).

    Every odd k has D_n(k) > zeta(n-1)^{-n} (1 - 2^{1-n})^{-n}, while
    D_n(2) = 1 - n/(2^n - 1). When the first exceeds the second, no odd k (and
    no even k, since those carry the factor D_n(2^m) <= D_n(2)) lands in the
    interval between them.

    Args:
        n: Dimension >= 4

    Returns:
        ImageGap(odd_lower_bound, d_at_2, gap_holds)

    Raises:
        ValueError: If n < 4
    """
    _check_dimension(n, 4)
    odd_lower_bound = 1.0 / (zeta_int(n - 1) ** n * (1.0 - 2.0 ** (1 - n)) ** n)
    d_at_2 = 1 - Fraction(n, 2**n - 1)
    gap = ImageGap(
        odd_lower_bound=odd_lower_bound,
        d_at_2=d_at_2,
        gap_holds=odd_lower_bound > float(d_at_2),
    )
    logger.debug(f"density_image_gap({n}) -> {gap}")
    return gap


def _log_step(p: int) -> float:
    # -log D_2(p) = log((p + 1)/(p - 1))
    return math.log1p(2.0 / (p - 1))


def _neg_log(value: Fraction) -> float:
    return math.log(value.denominator) - math.log(value.numerator)


def _greedy_primes(x: float, eps: float, max_primes: int) -> List[int]:
    chosen: List[int] = []
    total = 0.0
    p = 2
    examined = 0
    while x - total >= eps:
        examined += 1
        if examined > max_primes:
            raise BudgetExceededError(
                f"Greedy construction for x={x}, eps={eps} needs more than {max_primes} primes",
                budget=max_primes,
                requested=examined,
            )
        step = _log_step(p)
        if total + step <= x:
            chosen.append(p)
            total += step
        p = nextprime(p)
    return chosen


def _consecutive_primes(x: float, eps: float, max_primes: int) -> List[int]:
    p = 2
    while _log_step(p) >= eps:
        p = nextprime(p)
    chosen: List[int] = []
    total = 0.0
    while total <= x - eps:
        if len(chosen) >= max_primes:
            raise BudgetExceededError(
                f"Consecutive-prime construction for x={x}, eps={eps} needs more than "
                f"{max_primes} primes",
                budget=max_primes,
                requested=len(chosen) + 1,
            )
        chosen.append(p)
        total += _log_step(p)
        p = nextprime(p)
    return chosen


def find_k_for_density(
    x: float,
    eps: float,
    strategy: str = "greedy",
    max_primes: Optional[int] = None,
) -> int:
    """
    Build a squarefree k with |-log D_2(k) - x| < eps.

    For squarefree k, -log D_2(k) is the sum of d_p = -log(1 - 2/(p + 1))
    over p | k. Since d_p -> 0 and the sum over all primes diverges, any
    x >= 0 is reachable.

    Args:
        x: Target value of -log D_2(k), >= 0
        eps: Tolerance > 0
        strategy: 'greedy' takes ascending primes whenever they do not
            overshoot x; 'consecutive' takes a run of consecutive primes
            starting at the first p with d_p < eps
        max_primes: Cap on the number of primes considered (config default)

    Returns:
        Squarefree positive integer k (1 for x < eps)

    Raises:
        ValueError: On invalid x, eps or strategy
        BudgetExceededError: If the construction needs more primes than allowed
        ConsistencyError: If the exact check of D_2(k) disagrees with x
    """
    if not math.isfinite(x) or x < 0:
        raise ValueError(f"x must be a finite non-negative number, got {x}")
    if not math.isfinite(eps) or eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if max_primes is None:
        max_primes = load_settings().density.max_primes

    if strategy == "greedy":
        primes = _greedy_primes(x, eps, max_primes)
    elif strategy == "consecutive":
        primes = _consecutive_primes(x, eps, max_primes)
    else:
        raise ValueError(f"Unknown strategy: {strategy} (expected 'greedy' or 'consecutive')")

    # Exact D_2(p) per prime, summed over the squarefree k
    achieved = math.fsum(_neg_log(density(2, p)) for p in primes)
    if abs(achieved - x) >= eps:
        raise ConsistencyError(
            f"{len(primes)} primes give -log D_2(k) = {achieved}, not within {eps} of {x}"
        )
    k = math.prod(primes)
    logger.info(f"find_k_for_density({x}, {eps}, {strategy}): {len(primes)} primes")
    return k
