# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Integration tests: the verification suites on their full grids, the CLI end
to end, and the n = 2 convergence report script.

These take minutes rather than seconds. Run them with:

    pytest -m integration tests/integration
"""

import json
import runpy
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from primrows.cli import EXIT_OK, main
from primrows.lattice.ball import BallQuery, count_ball_fast_n2
from primrows.lattice.hnf import enumerate_hnf, hnf_count
from primrows.orbits import a, a_prime
from primrows.verify import SUITES, suite_names

pytestmark = [pytest.mark.integration, pytest.mark.slow]

SCRIPTS_DIR = Path(__file__).resolve().parents[2] / "scripts"


class TestHnfGrid:
    @pytest.mark.parametrize("n", [2, 3])
    def test_enumeration(self, n):
        for k in range(1, 61):
            assert sum(1 for _ in enumerate_hnf(n, k)) == a(n, k)
            assert sum(1 for _ in enumerate_hnf(n, k, primitive_only=True)) == a_prime(n, k)

    def test_n4_counts(self):
        for k in range(1, 61):
            assert hnf_count(4, k) == a(4, k)
            assert hnf_count(4, k, primitive_only=True) == a_prime(4, k)


class TestConvergence:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_ratio_at_t_1000(self, k):
        count = count_ball_fast_n2(BallQuery(n=2, k=k, T_sq=Fraction(10**6), primitive_only=True))
        expected = 6 * a_prime(2, k) / k * 10**6
        assert abs(count / expected - 1) < 0.05


class TestSuites:
    @pytest.mark.parametrize("name", suite_names())
    def test_full_grid(self, name):
        result = SUITES[name]()
        assert result.failures == []
        assert result.passed


class TestEndToEnd:
    def test_verify_all(self, capsys, tmp_path):
        target = tmp_path / "verify.json"
        assert main(["verify", "--suite", "all", "--out", str(target)]) == EXIT_OK
        document = json.loads(target.read_text())
        assert [row["name"] for row in document["results"]] == suite_names()
        assert document["summary"]["passed"] is True

    def test_convergence_script(self, monkeypatch, tmp_path):
        report = tmp_path / "convergence.json"
        argv = ["convergence-report.py", "--k", "1", "--tmax", "500", "--steps", "4"]
        monkeypatch.setattr(sys, "argv", argv + ["--out", str(report)])
        runpy.run_path(str(SCRIPTS_DIR / "convergence-report.py"), run_name="__main__")
        document = json.loads(report.read_text())
        assert [result["k"] for result in document["results"]] == [1]
        assert all(result["within_tolerance"] for result in document["results"])
        assert len(document["results"][0]["points"]) == 4
