# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Orbit counts a_n(k) and a'_n(k).

a_n(k) is the number of SL_n(Z)-orbits of integer n x n matrices with
determinant k, which equals the number of lower Hermite normal forms with
determinant |k|. a'_n(k) counts the orbits whose matrices have primitive rows.

Several independent evaluators are provided and are expected to agree exactly:

- a / a_prime: multiplicative, summing over ordered factorizations of each
  prime power of |k|
- a_by_global_tuples / a_prime_by_global_tuples: sum over ordered
  factorizations of |k| itself (slow path for cross-checks)
- a_local / a_prime_local: split recursion and inclusion/exclusion on prime powers
- closed forms for n = 2, 3 (a and a') and n = 4, 5 (a')
- Dirichlet identities a' = mu^{*n} * a and a = 1^{*n} * a'
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import List, Optional

from primrows.arith import (
    MU,
    ONE,
    ArithmeticFunction,
    dirichlet_convolve,
    dirichlet_power_function,
    factorize,
    ordered_factorizations,
    power_function,
    require_prime,
)
from primrows.config import load_settings
from primrows.errors import BudgetExceededError, ConsistencyError

logger = logging.getLogger(__name__)


def _check_dimension(n: int, minimum: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise ValueError(f"Dimension n must be an integer >= {minimum}, got {n!r}")


def _abs_nonzero(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValueError(f"k must be an integer, got {k!r}")
    if k == 0:
        raise ValueError("k must be nonzero: the orbit space of determinant 0 is infinite")
    return abs(k)


def _check_exponent(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ValueError(f"Exponent m must be a non-negative integer, got {m!r}")


@lru_cache(maxsize=65536)
def v(i: int, d: int) -> int:
    """
    Count primitive vectors (x_1, ..., x_{i-1}, d) with 0 <= x_j < d.

    Computed as sum over g | d of mu(g) (d/g)^{i-1}.

    Args:
        i: Row index >= 1 (the vector has i entries)
        d: Last entry >= 1

    Returns:
        Number of such primitive vectors
    """
    if i < 1:
        raise ValueError(f"Row index i must be >= 1, got {i}")
    return dirichlet_convolve(MU, power_function(i - 1), d)


def _hnf_weight(d: tuple) -> int:
    return prod(di**i for i, di in enumerate(d))


def _primitive_hnf_weight(d: tuple) -> int:
    return prod(v(i, di) for i, di in enumerate(d, start=1))


@lru_cache(maxsize=16384)
def _a_prime_power(n: int, p: int, m: int) -> int:
    return sum(_hnf_weight(d) for d in ordered_factorizations(p**m, n))


@lru_cache(maxsize=16384)
def _a_prime_prime_power(n: int, p: int, m: int) -> int:
    return sum(_primitive_hnf_weight(d) for d in ordered_factorizations(p**m, n))


def a(n: int, k: int) -> int:
    """
    Number of SL_n(Z)-orbits of integer matrices with determinant k.

    Multiplicative in k: each prime power p^m of |k| contributes the sum of
    d_1^0 d_2^1 ... d_n^{n-1} over ordered factorizations of p^m.

    Args:
        n: Dimension >= 1 (a(1, k) = 1)
        k: Nonzero integer; only |k| matters

    Returns:
        a_n(|k|)

    Raises:
        ValueError: If k == 0 or n < 1
    """
    _check_dimension(n, 1)
    k_abs = _abs_nonzero(k)
    return prod(_a_prime_power(n, p, m) for p, m in factorize(k_abs).factors)


def a_prime(n: int, k: int) -> int:
    """
    Number of SL_n(Z)-orbits of integer matrices with determinant k and primitive rows.

    Args:
        n: Dimension >= 2
        k: Nonzero integer; only |k| matters

    Returns:
        a'_n(|k|)

    Raises:
        ValueError: If k == 0 or n < 2
    """
    _check_dimension(n, 2)
    k_abs = _abs_nonzero(k)
    return prod(_a_prime_prime_power(n, p, m) for p, m in factorize(k_abs).factors)


def _global_tuple_limit(k_abs: int) -> None:
    limit = load_settings().orbits.global_tuple_limit
    if k_abs > limit:
        raise BudgetExceededError(
            f"Global tuple enumeration is limited to |k| <= {limit}, got {k_abs}",
            budget=limit,
            requested=k_abs,
        )


def a_by_global_tuples(n: int, k: int) -> int:
    """Slow path for a(n, k): one sum over all ordered factorizations of |k|."""
    _check_dimension(n, 1)
    k_abs = _abs_nonzero(k)
    _global_tuple_limit(k_abs)
    return sum(_hnf_weight(d) for d in ordered_factorizations(k_abs, n))


def a_prime_by_global_tuples(n: int, k: int) -> int:
    """Slow path for a_prime(n, k)."""
    _check_dimension(n, 2)
    k_abs = _abs_nonzero(k)
    _global_tuple_limit(k_abs)
    return sum(_primitive_hnf_weight(d) for d in ordered_factorizations(k_abs, n))


@lru_cache(maxsize=4096)
def _a_local_table(n: int, p: int, m: int) -> tuple:
    # table[r][j] = a_{r+1}(p^j)
    rows: List[List[int]] = [[1] * (m + 1)]
    for r in range(2, n + 1):
        weight = p ** (r - 1)
        row = [1]
        for j in range(1, m + 1):
            row.append(weight * row[j - 1] + rows[-1][j])
        rows.append(row)
    return tuple(tuple(row) for row in rows)


def a_local(n: int, p: int, m: int) -> int:
    """
    Evaluate a_n(p^m) by the split recursion.

    a_n(p^m) = p^{n-1} a_n(p^{m-1}) + a_{n-1}(p^m), with a_n(1) = 1 and
    a_1(p^m) = 1.

    Args:
        n: Dimension >= 1
        p: Prime
        m: Exponent >= 0

    Returns:
        a_n(p^m)

    Raises:
        ValueError: If p is not prime
    """
    _check_dimension(n, 1)
    require_prime(p)
    _check_exponent(m)
    return _a_local_table(n, p, m)[n - 1][m]


def a_prime_local(n: int, p: int, m: int) -> int:
    """
    Evaluate a'_n(p^m) by inclusion/exclusion over rows divisible by p.

    a'_n(p^m) = sum_{i=0}^{m} (-1)^i C(n, i) a_n(p^{m-i}).
    """
    _check_dimension(n, 2)
    require_prime(p)
    _check_exponent(m)
    a_n_column = _a_local_table(n, p, m)[n - 1]
    return sum((-1) ** i * comb(n, i) * a_n_column[m - i] for i in range(min(m, n) + 1))


def _check_closed_form_args(p: int, m: int) -> None:
    require_prime(p)
    _check_exponent(m)
    if m == 0:
        raise ValueError("Closed forms hold for m >= 1; use a_prime_local for m = 0")


def _as_integer(value: Fraction, label: str) -> int:
    if value.denominator != 1:
        raise ConsistencyError(f"{label} evaluated to the non-integer {value}")
    return value.numerator


def a2_closed(p: int, m: int) -> int:
    """a_2(p^m) = (p^{m+1} - 1)/(p - 1), for m >= 1."""
    _check_closed_form_args(p, m)
    return (p ** (m + 1) - 1) // (p - 1)


def a2_prime_closed(p: int, m: int) -> int:
    """a'_2(p^m) = p^m (1 - 1/p) = p^{m-1}(p - 1), for m >= 1."""
    _check_closed_form_args(p, m)
    return p ** (m - 1) * (p - 1)


def a3_closed(p: int, m: int) -> int:
    """
    Closed form a_3(p^m) = (p^{m+1} - 1)(p^{m+2} - 1) / ((p - 1)(p^2 - 1)).

    Args:
        p: Prime
        m: Exponent >= 1

    Returns:
        a_3(p^m)
    """
    _check_closed_form_args(p, m)
    value = Fraction((p ** (m + 1) - 1) * (p ** (m + 2) - 1), (p - 1) * (p**2 - 1))
    return _as_integer(value, f"a3_closed({p}, {m})")


def a3_prime_closed(p: int, m: int) -> int:
    """Closed form a'_3(p^m) = (p^{2m}(p+1)^2 - p^{m+1}) (p - 1)/p^3, for m >= 1."""
    _check_closed_form_args(p, m)
    value = Fraction((p ** (2 * m) * (p + 1) ** 2 - p ** (m + 1)) * (p - 1), p**3)
    return _as_integer(value, f"a3_prime_closed({p}, {m})")


def a4_prime_closed(p: int, m: int) -> int:
    """
    Closed form of a'_4(p^m) for m >= 1.

    (p - 1) p^{m-6} / (p + 1) times a polynomial in p, p^m and p^{2m}.
    """
    _check_closed_form_args(p, m)
    P = Fraction(p)
    pm = P**m
    p2m = pm * pm
    poly = (
        p2m
        - pm * P
        - 4 * pm * P**2
        - 6 * pm * P**3
        - 4 * pm * P**4
        - pm * P**5
        + 3 * p2m * P
        + 6 * p2m * P**2
        + 7 * p2m * P**3
        + 6 * p2m * P**4
        + 3 * p2m * P**5
        + p2m * P**6
        + P**3
    )
    value = (P - 1) * pm / P**6 / (P + 1) * poly
    return _as_integer(value, f"a4_prime_closed({p}, {m})")


# Coefficients of the n = 5 numerator: {power of p^m: {power of p: coefficient}}
_A5_NUMERATOR = {
    1: {6: -1},
    2: {3: 1, 4: 5, 5: 11, 6: 14, 7: 11, 8: 5, 9: 1},
    3: {
        1: -1, 2: -5, 3: -15, 4: -30, 5: -45, 6: -51,
        7: -45, 8: -30, 9: -15, 10: -5, 11: -1,
    },
    4: {
        0: 1, 1: 4, 2: 10, 3: 20, 4: 31, 5: 40, 6: 44,
        7: 40, 8: 31, 9: 20, 10: 10, 11: 4, 12: 1,
    },
}


def a5_prime_closed(p: int, m: int) -> int:
    """
    Closed form of a'_5(p^m) for m >= 1.

    (p - 1) / (p^10 (p + 1)(p^2 + p + 1)) times a polynomial in p and p^m.
    The summand's last factor carries the indicator of j_5 > 0.
    """
    _check_closed_form_args(p, m)
    pm = p**m
    poly = sum(
        coefficient * pm**e * p**shift
        for e, terms in _A5_NUMERATOR.items()
        for shift, coefficient in terms.items()
    )
    value = Fraction((p - 1) * poly, p**10 * (p + 1) * (p**2 + p + 1))
    return _as_integer(value, f"a5_prime_closed({p}, {m})")


def a_prime_logconcavity_gap(n: int, p: int, m: int) -> int:
    """a'_n(p^{m+1})^2 - a'_n(p^m) a'_n(p^{m+2}) by exact evaluation."""
    _check_exponent(m)
    middle = a_prime_local(n, p, m + 1)
    return middle * middle - a_prime_local(n, p, m) * a_prime_local(n, p, m + 2)


def a4_prime_logconcavity_gap(p: int, m: int) -> int:
    """
    Closed form of a'_4(p^{m+1})^2 - a'_4(p^m) a'_4(p^{m+2}).

    Valid for all m >= 0 (a separate expression covers m = 0).
    """
    require_prime(p)
    _check_exponent(m)
    if m == 0:
        return (p - 1) * (p + 2) * (p**3 - 3)
    q = p**2 + p + 1
    inner = (p + 1) ** 2 * q**3 * p ** (2 * m) - q**3 * p**m + (p + 1) ** 2 * p
    value = Fraction((p - 1) ** 4 * inner) * Fraction(p) ** (3 * m - 7)
    return _as_integer(value, f"a4_prime_logconcavity_gap({p}, {m})")


def a5_prime_logconcavity_gap_at_zero(p: int) -> int:
    """a'_5(p)^2 - a'_5(1) a'_5(p^2) in closed form."""
    require_prime(p)
    return (p - 1) * ((p - 1) * p * (p**2 + p + 3) * (p * (p + 2) + 2) - 10)


# Coefficients of the n = 5 gap numerator for m >= 1, keyed like _A5_NUMERATOR
_A5_GAP_NUMERATOR = {
    0: {4: 1, 5: 2, 6: 1},
    1: {2: -1, 3: -4, 4: -10, 5: -16, 6: -19, 7: -16, 8: -10, 9: -4, 10: -1},
    2: {
        1: 2, 2: 10, 3: 34, 4: 80, 5: 143, 6: 201, 7: 224,
        8: 201, 9: 143, 10: 80, 11: 34, 12: 10, 13: 2,
    },
    3: {
        0: -1, 1: -8, 2: -32, 3: -88, 4: -188, 5: -328, 6: -480, 7: -600, 8: -646,
        9: -600, 10: -480, 11: -328, 12: -188, 13: -88, 14: -32, 15: -8, 16: -1,
    },
    4: {
        0: 1, 1: 6, 2: 23, 3: 64, 4: 143, 5: 266, 6: 423, 7: 584, 8: 706, 9: 752,
        10: 706, 11: 584, 12: 423, 13: 266, 14: 143, 15: 64, 16: 23, 17: 6, 18: 1,
    },
}


def a5_prime_logconcavity_gap(p: int, m: int) -> int:
    """
    Closed form of a'_5(p^{m+1})^2 - a'_5(p^m) a'_5(p^{m+2}).

    For m >= 1 this is (p - 1)^4 p^(3m - 13) / (p^2 + p + 1) times a polynomial
    in p and p^m; m = 0 defers to a5_prime_logconcavity_gap_at_zero.
    """
    require_prime(p)
    _check_exponent(m)
    if m == 0:
        return a5_prime_logconcavity_gap_at_zero(p)
    pm = p**m
    poly = sum(
        coefficient * pm**e * p**shift
        for e, terms in _A5_GAP_NUMERATOR.items()
        for shift, coefficient in terms.items()
    )
    value = Fraction((p - 1) ** 4 * poly, p**2 + p + 1) * Fraction(p) ** (3 * m - 13)
    return _as_integer(value, f"a5_prime_logconcavity_gap({p}, {m})")


def a_prime_via_convolution(n: int, k: int) -> int:
    """
    Evaluate a'_n(|k|) as (mu^{*n} * a_n)(|k|).

    Args:
        n: Dimension >= 2
        k: Nonzero integer

    Returns:
        a'_n(|k|)
    """
    _check_dimension(n, 2)
    k_abs = _abs_nonzero(k)
    a_n = ArithmeticFunction(name=f"a_{n}", evaluate=lambda d: a(n, d))
    return dirichlet_convolve(dirichlet_power_function(MU, n), a_n, k_abs)


def a_via_convolution(n: int, k: int) -> int:
    """Evaluate a_n(|k|) as (1^{*n} * a'_n)(|k|)."""
    _check_dimension(n, 2)
    k_abs = _abs_nonzero(k)
    a_prime_n = ArithmeticFunction(name=f"a'_{n}", evaluate=lambda d: a_prime(n, d))
    return dirichlet_convolve(dirichlet_power_function(ONE, n), a_prime_n, k_abs)


def orbit_counts(n: int, k: int, method: Optional[str] = None) -> tuple:
    """
    Return (a_n(|k|), a'_n(|k|)) using the prime-power recursions.

    This is the evaluator the density module uses: it stays fast for large
    n and for k with many divisors.

    Args:
        n: Dimension >= 2
        k: Nonzero integer
        method: 'local' (default) or 'tuples' to use the ordered-factorization sums

    Returns:
        Tuple (a, a_prime)
    """
    _check_dimension(n, 2)
    k_abs = _abs_nonzero(k)
    if method in (None, "local"):
        factors = factorize(k_abs).factors
        return (
            prod(a_local(n, p, m) for p, m in factors),
            prod(a_prime_local(n, p, m) for p, m in factors),
        )
    if method == "tuples":
        return a(n, k_abs), a_prime(n, k_abs)
    raise ValueError(f"Unknown orbit-count method: {method}")
