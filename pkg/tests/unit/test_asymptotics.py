# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Unit tests for primrows.asymptotics

mpmath serves as the independent high-precision reference for zeta and Gamma.
"""

import math
from fractions import Fraction

import mpmath
import pytest

from primrows.asymptotics import (
    ConstantReport,
    ball_volume,
    c0,
    c1,
    c_n0,
    c_n0_prime,
    c_nk,
    c_nk_prime,
    constant_report,
    gamma_half,
    log_gamma_half,
    sphere_area,
    zeta_int,
    zeta_int_with_error,
)
from primrows.density import density

pytestmark = pytest.mark.unit

mpmath.mp.dps = 40


class TestZeta:
    def test_classical_values(self):
        assert zeta_int(2) == pytest.approx(math.pi**2 / 6, rel=1e-15)
        assert zeta_int(3) == pytest.approx(1.202056903159594, abs=1e-12)
        assert zeta_int(4) == pytest.approx(math.pi**4 / 90, rel=1e-15)

    @pytest.mark.parametrize("s", list(range(2, 31)) + [61, 64, 101])
    def test_error_bound_covers_reference(self, s):
        value, error = zeta_int_with_error(s)
        reference = float(mpmath.zeta(s))
        assert error >= 0
        assert error < 1e-12
        assert abs(value - reference) <= error + 1e-16

    def test_rejects_small_arguments(self):
        for s in (1, 0, -2):
            with pytest.raises(ValueError):
                zeta_int(s)


class TestGamma:
    def test_values(self):
        assert gamma_half(1) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
        assert gamma_half(2) == 1
        assert gamma_half(12) == 120

    @pytest.mark.parametrize("twice_x", list(range(1, 60)))
    def test_against_reference(self, twice_x):
        reference = mpmath.gamma(mpmath.mpf(twice_x) / 2)
        assert gamma_half(twice_x) == pytest.approx(float(reference), rel=1e-13)
        assert log_gamma_half(twice_x) == pytest.approx(float(mpmath.log(reference)), abs=1e-12)

    def test_log_gamma_stays_finite(self):
        assert math.isfinite(log_gamma_half(5001))

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            gamma_half(0)


class TestGeometry:
    def test_ball_and_sphere(self):
        assert ball_volume(2) == pytest.approx(math.pi)
        assert ball_volume(4) == pytest.approx(math.pi**2 / 2)
        assert sphere_area(2) == pytest.approx(2 * math.pi)
        assert sphere_area(3) == pytest.approx(4 * math.pi)
        assert ball_volume(6) * sphere_area(3) / 2 == pytest.approx(math.pi**4 / 3)

    def test_c0(self):
        assert c0(2) == pytest.approx(math.pi**2, rel=1e-13)
        assert c0(3) == pytest.approx(math.pi**4 / 3, rel=1e-13)
        assert c0(4) == pytest.approx(math.pi**8 / 720, rel=1e-13)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_c0_against_reference(self, n):
        d = n * (n - 1)
        reference = mpmath.pi ** (mpmath.mpf(n * n) / 2) / (
            mpmath.gamma(mpmath.mpf(n) / 2) * mpmath.gamma(mpmath.mpf(d) / 2 + 1)
        )
        assert c0(n) == pytest.approx(float(reference), rel=1e-11)

    def test_c0_rejects_small_n(self):
        with pytest.raises(ValueError):
            c0(1)


class TestConstants:
    def test_c1(self):
        assert c1(2) == pytest.approx(6.0, rel=1e-13)
        expected = math.pi**4 / (3 * zeta_int(2) * zeta_int(3))
        assert c1(3) == pytest.approx(expected, rel=1e-13)
        assert c1(3) == pytest.approx(16.42, abs=0.01)

    def test_c_nk(self):
        assert c_nk(2, 1) == pytest.approx(6.0, rel=1e-13)
        assert c_nk(2, 2) == pytest.approx(9.0, rel=1e-13)
        assert c_nk_prime(2, 2) == pytest.approx(3.0, rel=1e-13)
        assert c_nk(3, -6) == c_nk(3, 6)
        with pytest.raises(ValueError):
            c_nk(3, 0)

    @pytest.mark.parametrize("n,k", [(2, 6), (3, 12), (4, 2), (5, 30)])
    def test_ratio_is_density(self, n, k):
        assert c_nk_prime(n, k) / c_nk(n, k) == pytest.approx(float(density(n, k)), rel=1e-13)

    def test_singular(self):
        assert c_n0(2) == pytest.approx(6.0, rel=1e-13)
        assert c_n0(3) == pytest.approx(math.pi**4 / 3 * 2 / zeta_int(3), rel=1e-13)
        ratio = c_n0_prime(3) / c_n0(3)
        assert ratio == pytest.approx(float(1 / mpmath.zeta(2) ** 3), rel=1e-12)
        with pytest.raises(ValueError):
            c_n0_prime(2)


class TestConstantReport:
    def test_regular_k(self):
        report = constant_report(3, 6)
        assert isinstance(report, ConstantReport)
        assert report.c == pytest.approx(c_nk(3, 6))
        assert report.c_prime == pytest.approx(c_nk_prime(3, 6))
        assert Fraction(report.density_exact) == density(3, 6)
        assert report.density == pytest.approx(float(density(3, 6)))
        assert 0 < report.C0_error < 1e-9 * report.C0
        assert 0 < report.c_prime_error < 1e-9 * report.c_prime

    def test_default_k_is_one(self):
        report = constant_report(4)
        assert report.k is None
        assert report.c == pytest.approx(report.C1)
        assert report.density_exact == "1/1"

    def test_singular(self):
        report = constant_report(3, 0)
        assert report.c == pytest.approx(c_n0(3), rel=1e-13)
        assert report.c_prime == pytest.approx(c_n0_prime(3), rel=1e-13)
        assert report.density_exact is None
        no_prime = constant_report(2, 0)
        assert no_prime.c_prime is None
        assert no_prime.density is None

    def test_json_ready(self):
        dumped = constant_report(2, 2).model_dump(mode="json")
        assert dumped["n"] == 2
        assert dumped["density_exact"] == "1/3"
