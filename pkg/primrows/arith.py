# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Exact integer arithmetic for multiplicative functions.

Factorization, the Möbius function, ordered factorizations and a Dirichlet
convolution engine. Everything here works on Python ints, so no intermediate
value ever wraps around.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Callable, Dict, Iterator, List, Tuple

from sympy import factorint, isprime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredInteger:
    """
    A positive integer together with its prime factorization.

    Attributes:
        value: The integer itself (>= 1)
        factors: (prime, exponent) pairs with strictly increasing primes
    """

    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError(f"FactoredInteger value must be positive, got {self.value}")
        previous = 1
        for p, e in self.factors:
            if p <= previous or e < 1:
                raise ValueError(f"Malformed factor list for {self.value}: {self.factors}")
            previous = p
        if prod(p**e for p, e in self.factors) != self.value:
            raise ValueError(f"Factors {self.factors} do not multiply to {self.value}")

    def __int__(self) -> int:
        return self.value

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def radical(self) -> int:
        """Product of the distinct primes dividing value."""
        return prod(self.primes)

    def divisors(self) -> List[int]:
        """Return all positive divisors in increasing order."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**j for d in divs for j in range(e + 1)]
        return sorted(divs)


def _require_positive(k: int, what: str = "k") -> None:
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValueError(f"{what} must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"{what} must be positive, got {k}")


@lru_cache(maxsize=65536)
def factorize(k: int) -> FactoredInteger:
    """
    Factor a positive integer.

    sympy.factorint does trial division for small factors, then Pollard rho
    and p-1 with a Miller-Rabin/BPSW primality test on the cofactors.

    Args:
        k: Integer >= 1

    Returns:
        FactoredInteger with primes in increasing order (empty for k = 1)

    Raises:
        ValueError: If k <= 0
    """
    _require_positive(k)
    factors = tuple(sorted(factorint(k).items()))
    logger.debug(f"factorize({k}) -> {factors}")
    return FactoredInteger(value=k, factors=factors)


def is_prime(p: int) -> bool:
    """Deterministic primality test for the sizes used here (sympy.isprime)."""
    if isinstance(p, bool) or not isinstance(p, int):
        return False
    return bool(isprime(p))


def require_prime(p: int) -> None:
    """
    Reject anything that is not a prime.

    Raises:
        ValueError: If p is not prime
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")


def divisors(k: int) -> List[int]:
    """Sorted positive divisors of k >= 1."""
    return factorize(k).divisors()


def mobius(k: int) -> int:
    """
    Möbius function.

    Args:
        k: Integer >= 1

    Returns:
        (-1)^r if k is a product of r distinct primes, else 0

    Raises:
        ValueError: If k <= 0
    """
    fk = factorize(k)
    if not fk.is_squarefree:
        return 0
    return -1 if len(fk.factors) % 2 else 1


def ordered_factorizations(k: int, n: int) -> Iterator[Tuple[int, ...]]:
    """
    Stream every n-tuple of positive integers whose product is k.

    Tuples come out in lexicographic order, each exactly once.

    Args:
        k: Integer >= 1
        n: Tuple length >= 1

    Returns:
        Iterator over tuples (d_1, ..., d_n) with d_1 * ... * d_n == k
    """
    _require_positive(k)
    _require_positive(n, "n")
    return _ordered_factorizations(k, n)


def _ordered_factorizations(k: int, n: int) -> Iterator[Tuple[int, ...]]:
    if n == 1:
        yield (k,)
        return
    for d in divisors(k):
        for rest in _ordered_factorizations(k // d, n - 1):
            yield (d,) + rest


def count_ordered_factorizations(k: int, n: int) -> int:
    """Number of tuples ordered_factorizations(k, n) yields: prod C(m_p + n - 1, n - 1)."""
    _require_positive(n, "n")
    return prod(comb(e + n - 1, n - 1) for _, e in factorize(k).factors)


@dataclass(frozen=True)
class ArithmeticFunction:
    """
    A named, pure map from positive integers to integers.

    Attributes:
        name: Label used in logs and reprs
        evaluate: The map itself; must be total on k >= 1
    """

    name: str
    evaluate: Callable[[int], int]

    def __call__(self, k: int) -> int:
        return self.evaluate(k)

    def __repr__(self) -> str:
        return f"ArithmeticFunction({self.name})"


def power_function(i: int) -> ArithmeticFunction:
    """Return x -> x**i for i >= 0."""
    if i < 0:
        raise ValueError(f"Exponent must be non-negative, got {i}")
    return ArithmeticFunction(name=f"x^{i}", evaluate=lambda x: x**i)


MU = ArithmeticFunction(name="mu", evaluate=mobius)
ONE = ArithmeticFunction(name="1", evaluate=lambda _: 1)
IDENTITY = power_function(1)
DIVISOR_COUNT = ArithmeticFunction(
    name="tau", evaluate=lambda k: prod(e + 1 for _, e in factorize(k).factors)
)


def dirichlet_convolve(f: ArithmeticFunction, g: ArithmeticFunction, k: int) -> int:
    """
    Evaluate the Dirichlet convolution (f * g)(k) = sum over d | k of f(d) g(k/d).

    Args:
        f: Left factor
        g: Right factor
        k: Integer >= 1

    Returns:
        Exact integer value
    """
    return sum(f(d) * g(k // d) for d in divisors(k))


@lru_cache(maxsize=65536)
def dirichlet_power(f: ArithmeticFunction, n: int, k: int) -> int:
    """
    Evaluate the n-fold Dirichlet self-convolution of f at k.

    Only divisors of k are ever needed, so the powers are tabulated on the
    divisor lattice of k and extended one factor at a time.

    Args:
        f: Arithmetic function
        n: Number of factors (n = 1 returns f(k))
        k: Integer >= 1

    Returns:
        Exact integer value of f^{*n}(k)
    """
    _require_positive(n, "n")
    divs = divisors(k)
    f_values: Dict[int, int] = {d: f(d) for d in divs}
    table = dict(f_values)
    for _ in range(n - 1):
        table = {
            d: sum(f_values[e] * table[d // e] for e in divs if d % e == 0)
            for d in divs
        }
    return table[k]


def dirichlet_power_function(f: ArithmeticFunction, n: int) -> ArithmeticFunction:
    """Wrap dirichlet_power(f, n, .) as an ArithmeticFunction."""
    return ArithmeticFunction(
        name=f"{f.name}^*{n}", evaluate=lambda k: dirichlet_power(f, n, k)
    )
