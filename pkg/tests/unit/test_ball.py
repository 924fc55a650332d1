# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Unit tests for primrows.lattice.ball

Expected counts were obtained by a direct loop over every integer matrix in
the box |a_ij| <= T.
"""

from fractions import Fraction

import pytest

from primrows.errors import BudgetExceededError
from primrows.lattice import ball
from primrows.lattice.ball import (
    BallQuery,
    count_ball,
    count_ball_fast_n2,
    iter_ball,
    orbit_classes,
    orbit_decomposition_check,
)
from primrows.lattice.matrix import IntMatrix, det, norm_sq

pytestmark = pytest.mark.unit

# (k, T_sq, N, N')
N2_COUNTS = [
    (1, 3, 20, 20),
    (1, 10, 52, 52),
    (2, 10, 76, 20),
    (-2, 10, 76, 20),
    (3, 20, 144, 72),
    (6, 40, 384, 72),
]

N3_COUNTS = [
    (1, 3, 24, 24),
    (1, 4, 312, 312),
    (2, 6, 816, 744),
    (3, 6, 0, 0),
]


class TestBallQuery:
    def test_from_radius_is_exact(self):
        query = BallQuery.from_radius(2, 1, "3.1")
        assert query.T_sq == Fraction(961, 100)
        assert query.norm_bound == 9

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            BallQuery(n=1, k=1, T_sq=Fraction(4))
        with pytest.raises(ValueError):
            BallQuery(n=2, k=1, T_sq=Fraction(-1))


class TestCountBall:
    @pytest.mark.parametrize("k,t_sq,total,primitive", N2_COUNTS)
    def test_n2(self, k, t_sq, total, primitive):
        assert count_ball(BallQuery(n=2, k=k, T_sq=Fraction(t_sq))) == total
        assert count_ball(BallQuery(n=2, k=k, T_sq=Fraction(t_sq), primitive_only=True)) == (
            primitive
        )

    @pytest.mark.parametrize("k,t_sq,total,primitive", N3_COUNTS)
    def test_n3(self, k, t_sq, total, primitive):
        assert count_ball(BallQuery(n=3, k=k, T_sq=Fraction(t_sq))) == total
        assert count_ball(BallQuery(n=3, k=k, T_sq=Fraction(t_sq), primitive_only=True)) == (
            primitive
        )

    def test_singular(self):
        assert count_ball(BallQuery(n=2, k=0, T_sq=Fraction(4))) == 41
        assert count_ball(BallQuery(n=2, k=0, T_sq=Fraction(4), primitive_only=True)) == 16
        assert count_ball(BallQuery(n=3, k=0, T_sq=Fraction(2))) == 163
        assert count_ball(BallQuery(n=3, k=0, T_sq=Fraction(2), primitive_only=True)) == 0

    def test_boundary_is_closed(self):
        # The four signed permutation matrices sit exactly on norm_sq = 2
        assert count_ball(BallQuery(n=2, k=1, T_sq=Fraction(2))) == 4
        assert count_ball(BallQuery(n=2, k=1, T_sq=Fraction(199, 100))) == 0

    def test_small_ball_is_empty(self):
        # |det| <= norm_sq / 2 for 2 x 2 matrices
        for k in (3, 5, -7):
            query = BallQuery(n=2, k=k, T_sq=Fraction(2 * abs(k) - 1))
            assert count_ball(query) == 0
            assert count_ball_fast_n2(query) == 0

    def test_thread_count_does_not_matter(self):
        query = BallQuery(n=3, k=2, T_sq=Fraction(6), primitive_only=True)
        assert count_ball(query, threads=1) == count_ball(query, threads=4) == 744

    def test_caps(self):
        with pytest.raises(ValueError, match="n <= 3"):
            count_ball(BallQuery(n=4, k=1, T_sq=Fraction(4)))
        with pytest.raises(ValueError, match="cap"):
            count_ball(BallQuery(n=2, k=1, T_sq=Fraction(10**6 + 1)))

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as excinfo:
            count_ball(BallQuery(n=2, k=1, T_sq=Fraction(10)), budget=10)
        assert excinfo.value.budget == 10
        assert excinfo.value.requested > 10

    def test_configured_dimension(self, config_with):
        config_with(enumeration={"max_dimension": 2})
        with pytest.raises(ValueError):
            count_ball(BallQuery(n=3, k=1, T_sq=Fraction(3)))


class TestIterBall:
    def test_matrices_are_valid(self):
        matrices = list(iter_ball(BallQuery(n=3, k=2, T_sq=Fraction(6))))
        assert len(matrices) == 816
        assert len(set(matrices)) == 816
        assert all(det(m) == 2 and norm_sq(m) <= 6 for m in matrices)

    def test_primitive_rows(self):
        matrices = list(iter_ball(BallQuery(n=2, k=6, T_sq=Fraction(40), primitive_only=True)))
        assert len(matrices) == 72
        assert all(m.rows_primitive() for m in matrices)

    def test_first_entry_range(self):
        query = BallQuery(n=2, k=1, T_sq=Fraction(10))
        slices = [list(iter_ball(query, first_entry_range=(lo, lo))) for lo in range(-3, 4)]
        assert sum(len(s) for s in slices) == 52
        assert all(m[0, 0] == 2 for m in slices[5])


class TestFastN2:
    @pytest.mark.parametrize("k,t_sq,total,primitive", N2_COUNTS)
    def test_known_counts(self, k, t_sq, total, primitive):
        assert count_ball_fast_n2(BallQuery(n=2, k=k, T_sq=Fraction(t_sq))) == total
        query = BallQuery(n=2, k=k, T_sq=Fraction(t_sq), primitive_only=True)
        assert count_ball_fast_n2(query) == primitive

    @pytest.mark.parametrize("k", [1, 2, -3, 4, 6, 12, 30])
    def test_matches_brute_force(self, k):
        for t_sq in (Fraction(37), Fraction(1001, 10), Fraction(150)):
            for primitive in (False, True):
                query = BallQuery(n=2, k=k, T_sq=t_sq, primitive_only=primitive)
                assert count_ball_fast_n2(query) == count_ball(query)

    def test_rejects(self):
        with pytest.raises(ValueError):
            count_ball_fast_n2(BallQuery(n=3, k=1, T_sq=Fraction(4)))
        with pytest.raises(ValueError):
            count_ball_fast_n2(BallQuery(n=2, k=0, T_sq=Fraction(4)))

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            count_ball_fast_n2(BallQuery(n=2, k=1, T_sq=Fraction(10**4)), budget=5)


class TestOrbitClasses:
    def test_single_class(self):
        classes = orbit_classes(2, 2, 10)
        assert dict(classes) == {IntMatrix.from_rows([[1, 0], [1, 2]]): 20}

    def test_rejects_non_positive_k(self):
        with pytest.raises(ValueError):
            orbit_classes(2, -2, 10)

    @pytest.mark.parametrize("n,k,t_sq", [(2, 6, 40), (2, 4, 50), (3, 2, 6), (3, 1, 4)])
    def test_decomposition(self, n, k, t_sq):
        assert orbit_decomposition_check(n, k, t_sq)

    @pytest.mark.parametrize("n,k,t_sq", [(2, 6, 40), (3, 2, 6), (3, 1, 4)])
    def test_decomposition_catches_a_short_enumeration(self, monkeypatch, n, k, t_sq):
        matrices = ball._matrices

        def skip_first(query, first_range, meter):
            stream = matrices(query, first_range, meter)
            next(stream)
            return stream

        monkeypatch.setattr(ball, "_matrices", skip_first)
        assert not orbit_decomposition_check(n, k, t_sq)
