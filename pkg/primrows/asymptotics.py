# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Asymptotic counting constants.

N_{n,k}(T) ~ c_{n,k} T^{n(n-1)} and N'_{n,k}(T) ~ c'_{n,k} T^{n(n-1)}, with

    C_0 = V_{n(n-1)} S_{n-1} / 2 = pi^{n^2/2} / (Gamma(n/2) Gamma(n(n-1)/2 + 1))
    C_1 = C_0 / (zeta(2) ... zeta(n))
    c_{n,k} = C_1 a_n(|k|) / |k|^{n-1},   c'_{n,k} = C_1 a'_n(|k|) / |k|^{n-1}
    c_{n,0} = C_0 (n - 1) / zeta(n),      c'_{n,0} = c_{n,0} / zeta(n - 1)^n

zeta at even integers comes from Bernoulli numbers, at odd integers from a
partial sum bracketed by the integral tail. Gamma is only ever needed at
integers and half-integers and is built by exact recursion.
"""

import logging
import math
import sys
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from pydantic import BaseModel, Field
from sympy import bernoulli

from primrows.errors import ConsistencyError
from primrows.orbits import orbit_counts

logger = logging.getLogger(__name__)

ZETA_TAIL_TOLERANCE = 1e-13
C0_AGREEMENT_TOLERANCE = 1e-10

# Above this the Bernoulli route overflows floats long before the series gets slow
_MAX_EVEN_CLOSED_FORM = 60
_EPS = sys.float_info.epsilon


def _check_argument(s: int) -> None:
    if isinstance(s, bool) or not isinstance(s, int) or s < 2:
        raise ValueError(f"zeta argument must be an integer >= 2, got {s!r}")


def _zeta_even(s: int) -> float:
    half = s // 2
    b = bernoulli(s)
    coefficient = Fraction(int(b.p), int(b.q)) / (2 * math.factorial(s))
    return float((-1) ** (half + 1) * coefficient) * (2 * math.pi) ** s


def _series_cutoff(s: int) -> int:
    # Half-width of the tail bracket is below N^{-s} / 2
    cutoff = max(2, int((1.0 / (2 * ZETA_TAIL_TOLERANCE)) ** (1.0 / s)))
    while (cutoff ** (1 - s) - (cutoff + 1) ** (1 - s)) / (2 * (s - 1)) >= ZETA_TAIL_TOLERANCE:
        cutoff += 1
    return cutoff


def _zeta_series(s: int) -> Tuple[float, float]:
    cutoff = _series_cutoff(s)
    partial = math.fsum(j ** -float(s) for j in range(1, cutoff + 1))
    tail_high = cutoff ** (1 - s) / (s - 1)
    tail_low = (cutoff + 1) ** (1 - s) / (s - 1)
    value = partial + (tail_low + tail_high) / 2
    error = (tail_high - tail_low) / 2 + 4 * _EPS * value
    logger.debug(f"zeta({s}) by series: cutoff={cutoff}, error<={error:.3g}")
    return value, error


@lru_cache(maxsize=512)
def zeta_int_with_error(s: int) -> Tuple[float, float]:
    """
    Riemann zeta at an integer argument, with an absolute error bound.

    Args:
        s: Integer >= 2

    Returns:
        (value, error) with |value - zeta(s)| <= error < 1e-12

    Raises:
        ValueError: If s < 2
    """
    _check_argument(s)
    if s % 2 == 0 and s <= _MAX_EVEN_CLOSED_FORM:
        value = _zeta_even(s)
        # (2 pi)^s carries the rounding of pi s times
        return value, (s + 8) * _EPS * value
    return _zeta_series(s)


def zeta_int(s: int) -> float:
    """Riemann zeta at an integer s >= 2, accurate to better than 1e-12."""
    return zeta_int_with_error(s)[0]


def _zeta_product(n: int) -> Tuple[float, float]:
    # zeta(2) ... zeta(n) and its relative error bound
    value = 1.0
    relative_error = 0.0
    for s in range(2, n + 1):
        z, err = zeta_int_with_error(s)
        value *= z
        relative_error += err / z + _EPS
    return value, relative_error


def _check_twice_x(twice_x: int) -> None:
    if isinstance(twice_x, bool) or not isinstance(twice_x, int) or twice_x < 1:
        raise ValueError(f"twice_x must be a positive integer, got {twice_x!r}")


def _gamma_half_rational(twice_x: int) -> Fraction:
    # Gamma(x) / sqrt(pi)^(twice_x odd)
    if twice_x % 2 == 0:
        return Fraction(math.factorial(twice_x // 2 - 1))
    value = Fraction(1)
    for j in range(1, (twice_x - 1) // 2 + 1):
        value *= Fraction(2 * j - 1, 2)
    return value


def gamma_half(twice_x: int) -> float:
    """
    Gamma(x) for x = twice_x / 2, a positive integer or half-integer.

    Gamma(1) = 1, Gamma(1/2) = sqrt(pi) and Gamma(x + 1) = x Gamma(x), with the
    rational part carried exactly.
    """
    _check_twice_x(twice_x)
    rational = _gamma_half_rational(twice_x)
    if twice_x % 2 == 0:
        return float(rational)
    return float(rational) * math.sqrt(math.pi)


def log_gamma_half(twice_x: int) -> float:
    """log Gamma(twice_x / 2); stays finite where gamma_half would overflow."""
    _check_twice_x(twice_x)
    rational = _gamma_half_rational(twice_x)
    value = math.log(rational.numerator) - math.log(rational.denominator)
    if twice_x % 2 == 1:
        value += 0.5 * math.log(math.pi)
    return value


def ball_volume(d: int) -> float:
    """Volume V_d = pi^{d/2} / Gamma(d/2 + 1) of the unit ball in R^d."""
    if d < 1:
        raise ValueError(f"Dimension must be >= 1, got {d}")
    return math.pi ** (d / 2) / gamma_half(d + 2)


def sphere_area(n: int) -> float:
    """Surface area S_{n-1} = n V_n of the unit sphere in R^n."""
    if n < 2:
        raise ValueError(f"Dimension must be >= 2, got {n}")
    return n * ball_volume(n)


def _log_ball_volume(d: int) -> float:
    return (d / 2) * math.log(math.pi) - log_gamma_half(d + 2)


def _log_c0_pair(n: int) -> Tuple[float, float]:
    d = n * (n - 1)
    product_form = _log_ball_volume(d) + math.log(n) + _log_ball_volume(n) - math.log(2)
    gamma_form = (n * n / 2) * math.log(math.pi) - log_gamma_half(n) - log_gamma_half(d + 2)
    return product_form, gamma_form


def _c0_relative_error(n: int) -> float:
    _, gamma_form = _log_c0_pair(n)
    magnitude = (n * n / 2) * math.log(math.pi) + abs(gamma_form) + 1.0
    return 8 * _EPS * magnitude


def c0(n: int) -> float:
    """
    Geometric constant C_0 for dimension n.

    Both V_{n(n-1)} S_{n-1} / 2 and the Gamma form are evaluated (in log space,
    so large n does not overflow) and must agree.

    Args:
        n: Dimension >= 2

    Returns:
        The Gamma-form value

    Raises:
        ConsistencyError: If the two forms differ by more than 1e-10 relative
    """
    if n < 2:
        raise ValueError(f"Dimension must be >= 2, got {n}")
    product_form, gamma_form = _log_c0_pair(n)
    relative_gap = abs(math.expm1(product_form - gamma_form))
    if relative_gap > C0_AGREEMENT_TOLERANCE:
        raise ConsistencyError(
            f"C_0({n}) forms disagree: relative gap {relative_gap:.3g}"
        )
    return math.exp(gamma_form)


def c1(n: int) -> float:
    """C_1 = C_0 / (zeta(2) ... zeta(n)), the growth constant of SL_n(Z) in a ball."""
    zeta_product, _ = _zeta_product(n)
    return c0(n) / zeta_product


def _abs_nonzero(k: int) -> int:
    if k == 0:
        raise ValueError("k must be nonzero; use c_n0 / c_n0_prime for k = 0")
    return abs(k)


def c_nk(n: int, k: int) -> float:
    """c_{n,k} = C_1 a_n(|k|) / |k|^{n-1} for k != 0."""
    k_abs = _abs_nonzero(k)
    a_n, _ = orbit_counts(n, k_abs)
    return c1(n) * float(Fraction(a_n, k_abs ** (n - 1)))


def c_nk_prime(n: int, k: int) -> float:
    """c'_{n,k} = C_1 a'_n(|k|) / |k|^{n-1} for k != 0."""
    k_abs = _abs_nonzero(k)
    _, a_prime_n = orbit_counts(n, k_abs)
    return c1(n) * float(Fraction(a_prime_n, k_abs ** (n - 1)))


def c_n0(n: int) -> float:
    """c_{n,0} = C_0 (n - 1) / zeta(n), the constant for singular matrices."""
    return c0(n) * (n - 1) / zeta_int(n)


def c_n0_prime(n: int) -> float:
    """
    c'_{n,0} = C_0 (n - 1) / (zeta(n - 1)^n zeta(n)).

    Raises:
        ValueError: If n < 3 (zeta(1) diverges)
    """
    if n < 3:
        raise ValueError(f"c'_(n,0) needs n >= 3, got {n}")
    return c_n0(n) / zeta_int(n - 1) ** n


class ConstantReport(BaseModel):
    """Asymptotic constants for one (n, k) with absolute error bounds."""

    n: int = Field(..., ge=2)
    k: Optional[int] = None
    C0: float
    C0_error: float = Field(..., ge=0)
    C1: float
    C1_error: float = Field(..., ge=0)
    c: float
    c_error: float = Field(..., ge=0)
    c_prime: Optional[float] = None
    c_prime_error: Optional[float] = None
    density: Optional[float] = Field(None, description="c_prime / c (D_n(k) or D_n(0))")
    density_exact: Optional[str] = Field(None, description="a'_n(|k|)/a_n(|k|) for k != 0")


def constant_report(n: int, k: Optional[int] = None) -> ConstantReport:
    """
    Collect C_0, C_1, c and c' for (n, k), propagating error bounds.

    Errors are first-order relative bounds added worst case. With k = 0 the
    singular-matrix constants are reported (c' only for n >= 3).

    Args:
        n: Dimension >= 2
        k: Determinant; None reports C_0 and C_1 with c = C_1 (k = 1)

    Returns:
        ConstantReport
    """
    rel_c0 = _c0_relative_error(n)
    value_c0 = c0(n)
    zeta_product, rel_zeta = _zeta_product(n)
    rel_c1 = rel_c0 + rel_zeta + _EPS
    value_c1 = value_c0 / zeta_product

    c_prime: Optional[float] = None
    c_prime_error: Optional[float] = None
    density_value: Optional[float] = None
    density_exact: Optional[str] = None

    if k == 0:
        z_n, err_n = zeta_int_with_error(n)
        rel_c = rel_c0 + err_n / z_n + 2 * _EPS
        c = value_c0 * (n - 1) / z_n
        if n >= 3:
            z_prev, err_prev = zeta_int_with_error(n - 1)
            density_value = 1.0 / z_prev**n
            c_prime = c * density_value
            c_prime_error = (rel_c + n * (err_prev / z_prev + _EPS)) * c_prime
    else:
        k_abs = abs(k) if k is not None else 1
        a_n, a_prime_n = orbit_counts(n, k_abs)
        scale = k_abs ** (n - 1)
        rel_c = rel_c1 + 2 * _EPS
        c = value_c1 * float(Fraction(a_n, scale))
        c_prime = value_c1 * float(Fraction(a_prime_n, scale))
        c_prime_error = rel_c * c_prime
        exact = Fraction(a_prime_n, a_n)
        density_value = float(exact)
        density_exact = f"{exact.numerator}/{exact.denominator}"

    report = ConstantReport(
        n=n,
        k=k,
        C0=value_c0,
        C0_error=rel_c0 * value_c0,
        C1=value_c1,
        C1_error=rel_c1 * value_c1,
        c=c,
        c_error=rel_c * c,
        c_prime=c_prime,
        c_prime_error=c_prime_error,
        density=density_value,
        density_exact=density_exact,
    )
    logger.debug(f"constant_report({n}, {k}) -> {report}")
    return report
