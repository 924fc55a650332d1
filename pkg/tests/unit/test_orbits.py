# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Unit tests for primrows.orbits
"""

from itertools import product
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from primrows.errors import BudgetExceededError
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
    orbit_counts,
    v,
)

pytestmark = pytest.mark.unit


class TestOrbitCounts:
    def test_examples(self):
        assert a(4, 2) == 15
        assert a(3, 4) == 35
        assert a_prime(4, 2) == 11
        assert a_prime(2, 4) == 2
        assert a_prime(3, 4) == 17
        assert a(2, 6) == 12 and a_prime(2, 6) == 2

    @pytest.mark.parametrize("n", [1, 2, 3, 7])
    def test_k_one(self, n):
        assert a(n, 1) == 1
        if n >= 2:
            assert a_prime(n, 1) == 1

    def test_sign_of_k_is_ignored(self):
        assert a(3, -12) == a(3, 12)
        assert a_prime(3, -12) == a_prime(3, 12)

    def test_rejects_zero_and_small_n(self):
        with pytest.raises(ValueError):
            a(3, 0)
        with pytest.raises(ValueError):
            a_prime(3, 0)
        with pytest.raises(ValueError):
            a_prime(1, 5)
        with pytest.raises(ValueError):
            a(0, 5)

    def test_a_at_two_is_mersenne(self):
        for n in range(1, 12):
            assert a(n, 2) == 2**n - 1
            if n >= 2:
                assert a_prime(n, 2) == 2**n - 1 - n

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=1, max_value=300))
    def test_global_tuples_agree(self, n, k):
        assert a_by_global_tuples(n, k) == a(n, k)
        assert a_prime_by_global_tuples(n, k) == a_prime(n, k)

    @given(
        st.integers(min_value=2, max_value=6),
        st.integers(min_value=1, max_value=400),
        st.integers(min_value=1, max_value=400),
    )
    def test_multiplicative(self, n, j, k):
        if gcd(j, k) != 1:
            return
        assert a(n, j * k) == a(n, j) * a(n, k)
        assert a_prime(n, j * k) == a_prime(n, j) * a_prime(n, k)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_dirichlet_identities(self, n, small_k_range):
        for k in small_k_range:
            assert a_prime_via_convolution(n, k) == a_prime(n, k)
            assert a_via_convolution(n, k) == a(n, k)

    def test_orbit_counts_methods(self):
        assert orbit_counts(4, 12) == (a(4, 12), a_prime(4, 12))
        assert orbit_counts(4, 12, method="tuples") == orbit_counts(4, 12, method="local")
        with pytest.raises(ValueError):
            orbit_counts(4, 12, method="magic")

    def test_global_tuple_limit(self, config_with):
        config_with(orbits={"global_tuple_limit": 50})
        assert a_by_global_tuples(3, 50) == a(3, 50)
        with pytest.raises(BudgetExceededError) as excinfo:
            a_by_global_tuples(3, 51)
        assert excinfo.value.budget == 50
        assert excinfo.value.requested == 51


class TestPrimitiveVectors:
    def test_examples(self):
        assert v(1, 1) == 1
        assert all(v(1, d) == 0 for d in range(2, 20))
        assert v(2, 4) == 2
        assert v(3, 2) == 3

    @pytest.mark.parametrize("i,d", [(2, 12), (3, 6), (4, 4), (3, 9)])
    def test_brute_force(self, i, d):
        brute = sum(1 for xs in product(range(d), repeat=i - 1) if gcd(*xs, d) == 1)
        assert v(i, d) == brute

    def test_rejects_row_zero(self):
        with pytest.raises(ValueError):
            v(0, 3)


class TestLocalEvaluators:
    def test_examples(self):
        assert a_local(3, 2, 1) == 7
        assert a_local(3, 2, 2) == 35
        assert a_prime_local(2, 2, 3) == 4
        assert a_prime_local(3, 2, 2) == 17
        for n in range(2, 6):
            assert a_local(n, 5, 0) == 1
            assert a_prime_local(n, 5, 0) == 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_agree_with_generic(self, n, small_primes):
        for p in small_primes[:4]:
            for m in range(0, 7):
                assert a_local(n, p, m) == a(n, p**m)
                assert a_prime_local(n, p, m) == a_prime(n, p**m)

    def test_rejects_non_prime(self):
        with pytest.raises(ValueError):
            a_local(3, 4, 2)
        with pytest.raises(ValueError):
            a_prime_local(3, 9, 1)
        with pytest.raises(ValueError):
            a_prime_local(3, 2, -1)


class TestClosedForms:
    def test_examples(self):
        assert a3_closed(2, 1) == 7
        assert a3_closed(2, 2) == 35
        assert a3_closed(3, 1) == 13
        assert a3_prime_closed(2, 1) == 4
        assert a3_prime_closed(2, 2) == 17
        assert a3_prime_closed(3, 1) == 10
        assert a4_prime_closed(2, 1) == 11
        assert a4_prime_closed(3, 1) == 36
        assert a5_prime_closed(2, 1) == 26
        assert a5_prime_closed(5, 1) == 776

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_agree_with_generic(self, p):
        for m in range(1, 9):
            pm = p**m
            assert a2_closed(p, m) == a(2, pm)
            assert a2_prime_closed(p, m) == a_prime(2, pm)
            assert a3_closed(p, m) == a(3, pm)
            assert a3_prime_closed(p, m) == a_prime(3, pm)
            assert a4_prime_closed(p, m) == a_prime(4, pm)
            assert a5_prime_closed(p, m) == a_prime(5, pm)

    def test_reject_m_zero_and_non_prime(self):
        for closed in (a2_closed, a2_prime_closed, a3_closed, a3_prime_closed, a4_prime_closed):
            with pytest.raises(ValueError):
                closed(2, 0)
            with pytest.raises(ValueError):
                closed(6, 1)
        with pytest.raises(ValueError):
            a5_prime_closed(2, 0)


class TestLogConcavityGaps:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_n4_closed_form(self, p):
        for m in range(0, 8):
            gap = a4_prime_logconcavity_gap(p, m)
            assert gap == a_prime_logconcavity_gap(4, p, m)
            assert gap > 0

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_n5_at_zero(self, p):
        gap = a5_prime_logconcavity_gap_at_zero(p)
        assert gap == a_prime_logconcavity_gap(5, p, 0)
        assert gap > 0

    @pytest.mark.parametrize("p, m, expected", [(2, 1, 25780), (2, 2, 3572614), (3, 1, 7350800)])
    def test_n5_closed_form_values(self, p, m, expected):
        # a'_5(2^m) = 1, 26, 506, ...
        assert a5_prime_logconcavity_gap(p, m) == expected

    @given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(min_value=0, max_value=10))
    def test_n5_closed_form(self, p, m):
        gap = a5_prime_logconcavity_gap(p, m)
        assert gap == a_prime_logconcavity_gap(5, p, m)
        assert gap > 0

    def test_n5_closed_form_rejections(self):
        with pytest.raises(ValueError, match="prime"):
            a5_prime_logconcavity_gap(4, 1)
        with pytest.raises(ValueError, match="non-negative"):
            a5_prime_logconcavity_gap(2, -1)

    def test_n2_fails_at_m_zero(self, small_primes):
        # a'_2(p^m) = 1, p - 1, p(p - 1), ...
        for p in small_primes:
            assert a_prime_logconcavity_gap(2, p, 0) == -(p - 1)
            assert a_prime_logconcavity_gap(2, p, 1) == 0

    def test_n3_fails_only_at_p_two_m_zero(self, small_primes):
        # a'_3(2^m) = 1, 4, 17, 70, ...
        assert a_prime_logconcavity_gap(3, 2, 0) == -1
        for p in small_primes:
            for m in range(0, 6):
                if (p, m) != (2, 0):
                    assert a_prime_logconcavity_gap(3, p, m) >= 0
