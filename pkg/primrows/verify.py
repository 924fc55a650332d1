# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Verification suites.

Each suite cross-checks independent evaluations of the same quantities
(formulas against recursions, closed forms, Dirichlet identities, Hermite
normal form enumeration and brute-force lattice counts) and returns a
SuiteResult. `primrows verify` runs them and exits nonzero on any failure.

Suite sizes default to the full acceptance grids; the keyword arguments let
tests run the same checks on smaller ranges.
"""

import logging
import math
import random
import time
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

from pydantic import BaseModel, Field
from sympy import primerange

from primrows.arith import factorize
from primrows.asymptotics import c0, c1, c_n0, c_n0_prime, c_nk, c_nk_prime, zeta_int
from primrows.density import (
    IntSeq,
    a_prime_sequence,
    a_prime_sequence_by_convolution,
    density,
    density_image_gap,
    density_local_n2,
    density_lower_bound,
    density_monotone_check,
    density_n2_bounds,
    density_prime_limit,
    density_prime_limit_n2,
    density_zero,
    find_k_for_density,
    geometric_seq,
    is_log_concave,
    log_concavity_defect,
    menon_decompose,
    mobius_seq,
    seq_convolve,
    totally_divisible_limit,
)
from primrows.lattice.ball import (
    BallQuery,
    count_ball,
    count_ball_fast_n2,
    orbit_decomposition_check,
)
from primrows.lattice.hnf import enumerate_hnf, hnf_count, hnf_reduce, is_hnf
from primrows.lattice.matrix import (
    IntMatrix,
    det,
    norm_sq,
    random_matrix,
    random_unimodular,
    trace_gram,
)
from primrows.orbits import (
    a,
    a2_closed,
    a2_prime_closed,
    a3_closed,
    a3_prime_closed,
    a4_prime_closed,
    a4_prime_logconcavity_gap,
    a5_prime_closed,
    a5_prime_logconcavity_gap,
    a5_prime_logconcavity_gap_at_zero,
    a_by_global_tuples,
    a_local,
    a_prime,
    a_prime_by_global_tuples,
    a_prime_local,
    a_prime_logconcavity_gap,
    a_prime_via_convolution,
    a_via_convolution,
)

logger = logging.getLogger(__name__)

# Failures kept per suite; the count is always exact
MAX_REPORTED_FAILURES = 25


class SuiteResult(BaseModel):
    """Outcome of one verification suite."""

    name: str
    passed: bool
    checks: int = Field(..., ge=0)
    failed: int = Field(..., ge=0)
    failures: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    seconds: float = Field(..., ge=0)


class _Recorder:
    def __init__(self, name: str) -> None:
        self.name = name
        self.checks = 0
        self.failed = 0
        self.failures: List[str] = []
        self.notes: List[str] = []

    def check(self, ok: bool, description: str) -> bool:
        self.checks += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(description)
            logger.debug(f"[{self.name}] failed: {description}")
        return ok

    def note(self, message: str) -> None:
        self.notes.append(message)


SUITES: Dict[str, Callable[..., SuiteResult]] = {}


def _suite(name: str) -> Callable[[Callable[..., None]], Callable[..., SuiteResult]]:
    def register(body: Callable[..., None]) -> Callable[..., SuiteResult]:
        def run(**kwargs) -> SuiteResult:
            recorder = _Recorder(name)
            started = time.perf_counter()
            body(recorder, **kwargs)
            elapsed = time.perf_counter() - started
            result = SuiteResult(
                name=name,
                passed=recorder.failed == 0,
                checks=recorder.checks,
                failed=recorder.failed,
                failures=recorder.failures,
                notes=recorder.notes,
                seconds=round(elapsed, 3),
            )
            logger.info(
                f"Suite {name}: {result.checks} checks, {result.failed} failed, {elapsed:.1f}s"
            )
            return result

        run.__name__ = f"suite_{name}"
        run.__doc__ = body.__doc__
        SUITES[name] = run
        return run

    return register


def _primes_up_to(bound: int) -> List[int]:
    return [int(p) for p in primerange(2, bound + 1)]


def _coprime_pairs(limit: int) -> Iterable[tuple]:
    for x in range(2, limit + 1):
        for y in range(x + 1, limit // x + 1):
            if math.gcd(x, y) == 1:
                yield x, y


@_suite("identities")
def identities(
    rec: _Recorder, max_n: int = 6, max_k: int = 2000, max_p: int = 13, max_m: int = 8
) -> None:
    """Split recursion, inclusion/exclusion, Dirichlet identities and multiplicativity."""
    primes = _primes_up_to(max_p)
    for n in range(1, max_n + 1):
        for p in primes:
            for m in range(max_m + 1):
                value = a(n, p**m)
                rec.check(a_local(n, p, m) == value, f"a_local({n},{p},{m}) != a")
                rec.check(value >= p ** (m * (n - 1)), f"a({n},{p}^{m}) below p^(m(n-1))")
                if n >= 2:
                    rec.check(
                        a_prime_local(n, p, m) == a_prime(n, p**m),
                        f"a_prime_local({n},{p},{m}) != a_prime",
                    )

    for n in range(2, max_n + 1):
        for k in range(1, max_k + 1):
            rec.check(
                a_prime_via_convolution(n, k) == a_prime(n, k),
                f"mu^*{n} * a_{n} != a'_{n} at {k}",
            )
            rec.check(a(n, -k) == a(n, k) and a_prime(n, -k) == a_prime(n, k), f"sign at ({n},{k})")
        if n <= 5:
            for k in range(1, max_k // 2 + 1):
                rec.check(a_via_convolution(n, k) == a(n, k), f"1^*{n} * a'_{n} != a_{n} at {k}")

    for n in range(2, min(max_n, 4) + 1):
        for k in range(1, min(max_k, 300) + 1):
            rec.check(a_by_global_tuples(n, k) == a(n, k), f"global tuples a({n},{k})")
            rec.check(a_prime_by_global_tuples(n, k) == a_prime(n, k), f"global tuples a'({n},{k})")

    for x, y in _coprime_pairs(max_k):
        for n in range(2, max_n + 1):
            rec.check(a(n, x * y) == a(n, x) * a(n, y), f"a({n},{x}*{y}) not multiplicative")
            rec.check(
                a_prime(n, x * y) == a_prime(n, x) * a_prime(n, y),
                f"a'({n},{x}*{y}) not multiplicative",
            )
            rec.check(
                density(n, x * y) == density(n, x) * density(n, y),
                f"D_{n}({x}*{y}) not multiplicative",
            )


@_suite("closed_forms")
def closed_forms(rec: _Recorder, primes: Iterable[int] = (2, 3, 5, 7, 11), max_m: int = 8) -> None:
    """Closed forms for n = 2..5 against the generic evaluators."""
    for p in primes:
        for m in range(1, max_m + 1):
            pm = p**m
            rec.check(a2_closed(p, m) == a(2, pm), f"a2_closed({p},{m})")
            rec.check(a2_prime_closed(p, m) == a_prime(2, pm), f"a2_prime_closed({p},{m})")
            rec.check(a3_closed(p, m) == a(3, pm), f"a3_closed({p},{m})")
            rec.check(a3_prime_closed(p, m) == a_prime(3, pm), f"a3_prime_closed({p},{m})")
            rec.check(a4_prime_closed(p, m) == a_prime(4, pm), f"a4_prime_closed({p},{m})")
            rec.check(a5_prime_closed(p, m) == a_prime(5, pm), f"a5_prime_closed({p},{m})")
        for m in range(max_m):
            exact = log_concavity_defect(a_prime_sequence(4, p, m + 3), m + 1)
            rec.check(a4_prime_logconcavity_gap(p, m) == exact, f"a4 gap ({p},{m})")
            rec.check(a_prime_logconcavity_gap(4, p, m) == exact, f"a4 gap direct ({p},{m})")
        exact = a_prime_logconcavity_gap(5, p, 0)
        rec.check(a5_prime_logconcavity_gap_at_zero(p) == exact, f"a5 gap at zero ({p})")

    spots = {"a3(2)": (a3_closed(2, 1), 7), "a3'(2)": (a3_prime_closed(2, 1), 4),
             "a4'(2)": (a4_prime_closed(2, 1), 11), "a5'(2)": (a5_prime_closed(2, 1), 26)}
    for label, (value, expected) in spots.items():
        rec.check(value == expected, f"{label} = {value}, expected {expected}")


def _random_positive_det(rng: random.Random, n: int, max_det: int) -> IntMatrix:
    while True:
        matrix = random_matrix(n, rng, 4)
        d = det(matrix)
        if 1 <= abs(d) <= max_det:
            return matrix if d > 0 else matrix.negate_row(0)


@_suite("hnf_oracle")
def hnf_oracle(
    rec: _Recorder, max_k: int = 60, enumerate_dims: Iterable[int] = (2, 3),
    count_dims: Iterable[int] = (4,), stream_max_k: int = 12, samples: int = 200,
    seed: int = 20240917,
) -> None:
    """
    HNF streams against a/a', and HNF reduction and matrix identities on random input.

    For count_dims the streams are counted up to stream_max_k and hnf_count covers
    the rest of the range.
    """
    for n in enumerate_dims:
        for k in range(1, max_k + 1):
            matrices = list(enumerate_hnf(n, k))
            rec.check(len(matrices) == a(n, k), f"|HNF({n},{k})| = {len(matrices)} != a")
            rec.check(len(set(matrices)) == len(matrices), f"HNF({n},{k}) has duplicates")
            primitive = list(enumerate_hnf(n, k, primitive_only=True))
            rec.check(len(primitive) == a_prime(n, k), f"|HNF'({n},{k})| != a'")
            if k <= 12:
                rec.check(all(is_hnf(c) and det(c) == k for c in matrices), f"HNF({n},{k}) shape")
                rec.check(all(c.rows_primitive() for c in primitive), f"HNF'({n},{k}) rows")
    for n in count_dims:
        for k in range(1, max_k + 1):
            rec.check(hnf_count(n, k) == a(n, k), f"hnf_count({n},{k}) != a")
            rec.check(hnf_count(n, k, True) == a_prime(n, k), f"hnf_count'({n},{k}) != a'")
            if k <= stream_max_k:
                streamed = sum(1 for _ in enumerate_hnf(n, k))
                rec.check(streamed == a(n, k), f"|HNF({n},{k})| = {streamed} != a")
                streamed = sum(1 for _ in enumerate_hnf(n, k, primitive_only=True))
                rec.check(streamed == a_prime(n, k), f"|HNF'({n},{k})| = {streamed} != a'")

    rng = random.Random(seed)
    for _ in range(samples):
        matrix = _random_positive_det(rng, 3, 20)
        reduced, transform = hnf_reduce(matrix)
        rec.check(is_hnf(reduced), f"hnf_reduce({matrix}) not in HNF")
        rec.check(det(transform) == 1, f"hnf_reduce({matrix}) transform det != 1")
        rec.check(matrix @ transform == reduced, f"hnf_reduce({matrix}): A X != C")
        moved = matrix @ random_unimodular(3, rng)
        rec.check(hnf_reduce(moved)[0] == reduced, f"orbit of {matrix} has two HNFs")

        square = random_matrix(4, rng, 5)
        rec.check(det(square) == det(square, "cofactor"), f"Bareiss != cofactor for {square}")
        rec.check(norm_sq(square) == trace_gram(square), f"norm_sq != tr(A^T A) for {square}")
        other = random_matrix(3, rng, 5)
        rec.check(det(matrix @ other) == det(matrix) * det(other), "det not multiplicative")

    for _ in range(samples * 5 // 2):
        matrix = random_matrix(3, rng, 6)
        unimodular = random_unimodular(3, rng)
        rec.check(
            matrix.rows_primitive() == (matrix @ unimodular).rows_primitive(),
            f"row primitivity of {matrix} not preserved",
        )


@_suite("logconcavity")
def logconcavity(
    rec: _Recorder, dims: Iterable[int] = range(4, 9), max_p: int = 13, max_m: int = 12
) -> None:
    """m -> a'_n(p^m) log-concave for n >= 4; the n = 2, 3 failure at p = 2, r = 1."""
    primes = _primes_up_to(max_p)
    for n in dims:
        for p in primes:
            sequence = a_prime_sequence(n, p, max_m + 1)
            ok, r = is_log_concave(sequence)
            rec.check(ok, f"a'_{n}({p}^m) fails log-concavity at r={r}")
            rec.check(
                a_prime_sequence_by_convolution(n, p, max_m + 1) == sequence,
                f"convolution form of a'_{n}({p}^m)",
            )

    for p in primes:
        for m in range(max_m - 1):
            gap = a5_prime_logconcavity_gap(p, m)
            rec.check(
                gap == a_prime_logconcavity_gap(5, p, m) and gap > 0, f"a5 gap ({p},{m}) = {gap}"
            )

    for n in (2, 3):
        ok, r = is_log_concave(a_prime_sequence(n, 2, 4))
        rec.check(not ok and r == 1, f"a'_{n}(2^m) should fail log-concavity at r=1, got {r}")
    rec.note("asserted negative: a'_2(2^m) and a'_3(2^m) fail log-concavity at r = 1")

    length = 12
    for p in primes:
        mu = mobius_seq(length)
        factors = [seq_convolve(mu, geometric_seq(p, i, length)) for i in range(7)]
        for j in range(1, 7):
            ok, r = is_log_concave(seq_convolve(factors[0], factors[j]))
            rec.check(not ok and r == 1, f"(M*P_0)*(M*P_{j}) at p={p} should fail at r=1")
            for i in range(1, j):
                w = seq_convolve(factors[i], factors[j])
                ok, r = is_log_concave(w)
                rec.check(all(t > 0 for t in w), f"(M*P_{i})*(M*P_{j}) at p={p} not positive")
                if p == 2 and i == 1:
                    # w_1^2 - w_0 w_2 = (p^i - 2)(p^j - 2) - 1 = -1
                    rec.check(not ok and r == 1, f"(M*P_1)*(M*P_{j}) at p=2 should fail at r=1")
                else:
                    rec.check(ok, f"(M*P_{i})*(M*P_{j}) at p={p} fails at r={r}")
    rec.note("asserted negative: (M*P_1)*(M*P_j) at p = 2 fails log-concavity at r = 1")


@_suite("monotonicity")
def monotonicity(
    rec: _Recorder, dims: Iterable[int] = range(2, 9), max_p: int = 13, max_m: int = 8,
    rough_bound: int = 10_000,
) -> None:
    """D_n(p^m) strictly decreasing in m; D_n(p) increasing in p."""
    primes = _primes_up_to(max_p)
    for n in dims:
        for p in primes:
            rec.check(density_monotone_check(n, p, max_m), f"D_{n}({p}^m) not decreasing")
    for p in primes:
        for m in range(max_m + 1):
            rec.check(density_local_n2(p, m) == density(2, p**m), f"D_2({p}^{m}) closed form")

    for n in (3, 4):
        previous = Fraction(0)
        for p in _primes_up_to(rough_bound):
            value = density(n, p)
            rec.check(previous < value < 1, f"D_{n}(p) not increasing at p={p}")
            previous = value
        rec.check(
            1 - previous < Fraction(1, 10**6),
            f"D_{n}(p) = {float(previous)} still far from 1 near p = {rough_bound}",
        )


def _random_sequence(rng: random.Random, length: int) -> IntSeq:
    return IntSeq(terms=(1,) + tuple(rng.randint(-20, 20) for _ in range(length - 1)))


@_suite("menon")
def menon(rec: _Recorder, pairs: int = 200, length: int = 10, seed: int = 1977) -> None:
    """The three-part decomposition on random pairs and on M*P_i pairs."""
    rng = random.Random(seed)
    for _ in range(pairs):
        u, v = _random_sequence(rng, length), _random_sequence(rng, length)
        w = seq_convolve(u, v)
        for r in range(1, length - 1):
            rec.check(
                sum(menon_decompose(u, v, r)) == log_concavity_defect(w, r),
                f"decomposition fails for u={u.terms}, v={v.terms}, r={r}",
            )

    for p in (2, 3, 5, 7):
        mu = mobius_seq(length)
        for j in range(1, 6):
            for i in range(j):
                u = seq_convolve(mu, geometric_seq(p, i, length))
                v = seq_convolve(mu, geometric_seq(p, j, length))
                for r in range(1, length - 1):
                    # The I sum is empty at r = 1
                    expected = (u[r] - u[r - 1]) * (v[r] - v[r - 1]) - (1 if r == 1 else 0)
                    rec.check(
                        sum(menon_decompose(u, v, r)) == expected,
                        f"M*P_{i}, M*P_{j} product formula at p={p}, r={r}",
                    )

    for _ in range(pairs // 4):
        top = rng.randint(length, 3 * length)
        u = IntSeq(terms=tuple(math.comb(top, r) for r in range(length)))
        v = geometric_seq(rng.choice((2, 3, 5)), rng.randint(0, 3), length)
        for r in range(1, length - 1):
            rec.check(all(part >= 0 for part in menon_decompose(u, v, r)), f"negative part r={r}")


@_suite("limits")
def limits(rec: _Recorder, max_m: int = 12) -> None:
    """Prime-power and totally-divisible limits of D_n."""
    target = density_prime_limit(3, 2)
    rec.check(target == Fraction(27, 64), f"limit of D_3(2^m) is {target}")
    gaps = [abs(density(3, 2**m) / target - 1) for m in range(1, 11)]
    rec.check(gaps[-1] < Fraction(1, 100), f"|D_3(2^10) 64/27 - 1| = {float(gaps[-1])}")
    rec.check(
        all(x > y for x, y in zip(gaps, gaps[1:])), "D_3(2^m) not approaching 27/64 monotonically"
    )

    for n in range(3, 7):
        for p in (2, 3, 5):
            limit = density_prime_limit(n, p)
            rec.check(
                limit < density(n, p**max_m) < density(n, p ** (max_m - 1)),
                f"D_{n}({p}^m) not above its limit",
            )
    for p in (2, 3, 5):
        limit = density_prime_limit_n2(p)
        rec.check(
            abs(density_local_n2(p, 40) - limit) < Fraction(1, 10**9),
            f"D_2({p}^m) does not tend to (1-1/p)^2",
        )

    limit = totally_divisible_limit(3, (2, 3, 5))
    values = [density(3, 30**m) for m in range(1, max_m + 1)]
    rec.check(all(x > y for x, y in zip(values, values[1:])), "D_3(30^m) not decreasing")
    rec.check(
        0 < values[-1] - limit < Fraction(1, 1000), f"D_3(30^{max_m}) not within 1e-3 of limit"
    )


@_suite("bounds")
def bounds(rec: _Recorder, max_k: int = 1000, dims: Iterable[int] = (3, 4, 5)) -> None:
    """Strict sandwich of D_n(k) and uniform convergence to 1 in n."""
    for n in dims:
        for k in range(2, max_k + 1):
            value = density(n, k)
            rec.check(density_lower_bound(n, k) < value < 1, f"D_{n}({k}) = {value} out of bounds")
    for k in range(2, max_k + 1):
        lower, upper = density_n2_bounds(k)
        value = density(2, k)
        rec.check(lower < value < upper, f"D_2({k}) = {value} outside ({lower}, {upper})")

    for n in range(10, 17):
        floor_value = 1 - Fraction(n, 2 ** (n - 2))
        smallest = min(density(n, k) for k in range(1, max_k + 1))
        rec.check(smallest >= floor_value, f"min D_{n}(k) = {float(smallest)} below 1 - n 2^(2-n)")


@_suite("image")
def image(
    rec: _Recorder, max_n: int = 40, targets: Iterable[float] = (0.1, 0.7, 2.0), eps: float = 0.01
) -> None:
    """The gap in the image of D_n for n >= 4, and density of the image for n = 2."""
    for n in range(4, max_n + 1):
        rec.check(density_image_gap(n).gap_holds, f"image gap fails for n={n}")
    gap4 = density_image_gap(4)
    rec.check(abs(gap4.odd_lower_bound - 0.81709) < 1e-4, f"n=4 bound {gap4.odd_lower_bound}")
    rec.check(gap4.d_at_2 == Fraction(11, 15), f"D_4(2) = {gap4.d_at_2}")
    gap5 = density_image_gap(5)
    rec.check(abs(gap5.odd_lower_bound - 0.92973) < 1e-4, f"n=5 bound {gap5.odd_lower_bound}")
    rec.check(gap5.d_at_2 == Fraction(26, 31), f"D_5(2) = {gap5.d_at_2}")

    for x in targets:
        k = find_k_for_density(x, eps)
        achieved = -math.log(density(2, k))
        rec.check(abs(achieved - x) < eps, f"find_k_for_density({x}) gave {achieved}")
        rec.check(factorize(k).is_squarefree, f"find_k_for_density({x}) = {k} not squarefree")
        rec.note(f"x={x}: k={k} with -log D_2(k) = {achieved:.6f}")
    for x, tolerance in ((0.7, 0.05), (0.1, 0.01)):
        k = find_k_for_density(x, tolerance, strategy="consecutive")
        achieved = -math.log(density(2, k))
        rec.check(abs(achieved - x) < tolerance, f"consecutive strategy for {x} gave {achieved}")


@_suite("constants")
def constants(rec: _Recorder, max_n: int = 12, max_k: int = 100) -> None:
    """C_0 forms, C_1, c_{n,k} against exact densities, and the k = 0 constants."""
    rec.check(abs(c1(2) - 6) < 1e-9, f"c1(2) = {c1(2)}")
    for n, exact in ((2, math.pi**2), (3, math.pi**4 / 3), (4, math.pi**8 / 720)):
        rec.check(math.isclose(c0(n), exact, rel_tol=1e-12), f"c0({n}) = {c0(n)}, expected {exact}")
    for n in range(2, max_n + 1):
        rec.check(c0(n) > 0, f"c0({n}) not positive")

    for n in range(2, 6):
        for k in range(1, max_k + 1):
            for signed in (k, -k):
                ratio = c_nk_prime(n, signed) / c_nk(n, signed)
                rec.check(
                    abs(ratio - float(density(n, k))) < 1e-9, f"c'/c at ({n},{signed}) = {ratio}"
                )
    for n in range(3, 9):
        rec.check(
            abs(c_n0_prime(n) / c_n0(n) - density_zero(n)) < 1e-9, f"c'_(n,0)/c_(n,0) at n={n}"
        )
    values = [zeta_int(s) for s in range(2, 21)]
    rec.check(all(x > y for x, y in zip(values, values[1:])), "zeta not decreasing on 2..20")


@_suite("main_theorem")
def main_theorem(
    rec: _Recorder, radius: int = 1000, ks: Iterable[int] = (1, 2, 3, 4), tolerance: float = 0.05,
    grid_ks: Iterable[int] = range(1, 7), grid_t_sq: Iterable[int] = (2, 10, 50, 200, 1000),
) -> None:
    """N'_{2,k}(T) / (c'_{2,k} T^2) near 1, and the fast path against brute force."""
    for k in ks:
        query = BallQuery(n=2, k=k, T_sq=Fraction(radius**2), primitive_only=True)
        count = count_ball_fast_n2(query)
        constant = Fraction(6 * a_prime(2, k), k)
        rec.check(
            abs(c_nk_prime(2, k) - float(constant)) < 1e-9, f"c'_(2,{k}) = {c_nk_prime(2, k)}"
        )
        ratio = count / (float(constant) * radius**2)
        rec.check(abs(ratio - 1) <= tolerance, f"N'_(2,{k})({radius}) / (c' T^2) = {ratio}")
        rec.note(f"k={k}: N'={count}, ratio={ratio:.5f}")

    rec.check(count_ball(BallQuery(n=2, k=1, T_sq=Fraction(2))) == 4, "N_(2,1)(sqrt 2) != 4")
    for k in grid_ks:
        for t_sq in grid_t_sq:
            for primitive in (False, True):
                query = BallQuery(n=2, k=k, T_sq=Fraction(t_sq), primitive_only=primitive)
                fast, slow = count_ball_fast_n2(query), count_ball(query)
                rec.check(fast == slow, f"fast {fast} != brute force {slow} for {query}")
    for k in range(1, 5):
        query = BallQuery(n=2, k=k, T_sq=Fraction(50))
        negated = BallQuery(n=2, k=-k, T_sq=Fraction(50))
        rec.check(count_ball(query) == count_ball(negated), f"N_(2,{k}) != N_(2,{-k})")


@_suite("orbits")
def orbits(
    rec: _Recorder, n2_ks: Iterable[int] = range(1, 7), n2_t_sq: int = 400,
    n3_ks: Iterable[int] = (1, 2, 3), n3_t_sq: int = 12,
) -> None:
    """Ball counts split into orbits of the primitive HNFs."""
    for k in n2_ks:
        rec.check(orbit_decomposition_check(2, k, n2_t_sq), f"orbit decomposition n=2 k={k}")
    for k in n3_ks:
        rec.check(orbit_decomposition_check(3, k, n3_t_sq), f"orbit decomposition n=3 k={k}")


@_suite("parallel")
def parallel(rec: _Recorder, thread_counts: Iterable[int] = (1, 4, 8)) -> None:
    """count_ball gives identical answers for every thread count."""
    grid = [
        BallQuery(n=2, k=1, T_sq=Fraction(300)),
        BallQuery(n=2, k=3, T_sq=Fraction(300), primitive_only=True),
        BallQuery(n=2, k=0, T_sq=Fraction(40)),
        BallQuery(n=3, k=1, T_sq=Fraction(6)),
        BallQuery(n=3, k=2, T_sq=Fraction(8), primitive_only=True),
    ]
    for query in grid:
        counts = {threads: count_ball(query, threads=threads) for threads in thread_counts}
        rec.check(len(set(counts.values())) == 1, f"thread-dependent counts {counts} for {query}")


def suite_names() -> List[str]:
    return list(SUITES)


def run_suites(names: Optional[Iterable[str]] = None) -> List[SuiteResult]:
    """
    Run the named suites (all when names is None) in registration order.

    Raises:
        ValueError: If a name is not a known suite
    """
    selected = list(SUITES) if names is None else list(names)
    unknown = [name for name in selected if name not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    return [SUITES[name]() for name in selected]
