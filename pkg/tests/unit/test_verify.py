# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Unit tests for primrows.verify

Every suite runs here on a reduced grid; the full grids are exercised by the
integration tests.
"""

import pytest

from primrows import verify
from primrows.verify import SUITES, SuiteResult, run_suites, suite_names

pytestmark = pytest.mark.unit

SMALL_GRIDS = {
    "identities": {"max_n": 4, "max_k": 100, "max_p": 5, "max_m": 4},
    "closed_forms": {"primes": (2, 3), "max_m": 5},
    "hnf_oracle": {"max_k": 12, "samples": 20},
    "logconcavity": {"dims": range(4, 6), "max_p": 5, "max_m": 6},
    "monotonicity": {"dims": range(2, 5), "max_p": 5, "max_m": 5, "rough_bound": 2000},
    "menon": {"pairs": 20, "length": 8},
    "limits": {},
    "bounds": {"max_k": 100},
    "image": {"max_n": 8, "targets": (0.7,), "eps": 0.05},
    "constants": {"max_n": 6, "max_k": 20},
    "main_theorem": {"radius": 300, "ks": (1,), "grid_ks": (1, 3), "grid_t_sq": (2, 50)},
    "orbits": {"n2_ks": (1, 2), "n2_t_sq": 50, "n3_ks": (1,), "n3_t_sq": 4},
    "parallel": {"thread_counts": (1, 2)},
}


class TestRegistry:
    def test_names(self):
        assert suite_names() == list(SMALL_GRIDS)

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="Unknown suite"):
            run_suites(["identities", "nonsense"])


class TestSuites:
    @pytest.mark.parametrize("name", list(SMALL_GRIDS))
    def test_passes_on_small_grid(self, name):
        result = SUITES[name](**SMALL_GRIDS[name])
        assert isinstance(result, SuiteResult)
        assert result.name == name
        assert result.failures == []
        assert result.passed
        assert result.checks > 0

    def test_negative_results_are_noted(self):
        result = SUITES["logconcavity"](**SMALL_GRIDS["logconcavity"])
        assert any("asserted negative" in note for note in result.notes)

    def test_failures_are_reported(self, monkeypatch):
        monkeypatch.setattr(verify, "a2_closed", lambda p, m: 0)
        result = SUITES["closed_forms"](primes=(2,), max_m=3)
        assert not result.passed
        assert result.failed == 3
        assert result.failures[0] == "a2_closed(2,1)"

    def test_failure_list_is_capped(self, monkeypatch):
        monkeypatch.setattr(verify, "a3_closed", lambda p, m: -1)
        result = SUITES["closed_forms"](primes=(2, 3, 5, 7, 11), max_m=8)
        assert result.failed == 40 + 1
        assert len(result.failures) == verify.MAX_REPORTED_FAILURES

    def test_n4_streams_are_counted(self, monkeypatch):
        stream = verify.enumerate_hnf

        def missing_one(n, k, primitive_only=False):
            matrices = stream(n, k, primitive_only)
            if (n, k) == (4, 2):
                next(matrices)
            return matrices

        monkeypatch.setattr(verify, "enumerate_hnf", missing_one)
        result = SUITES["hnf_oracle"](max_k=3, enumerate_dims=(), stream_max_k=2, samples=0)
        assert result.failures == ["|HNF(4,2)| = 14 != a", "|HNF'(4,2)| = 10 != a'"]

    def test_n5_gap_closed_form_is_checked(self, monkeypatch):
        monkeypatch.setattr(verify, "a5_prime_logconcavity_gap", lambda p, m: 0)
        result = SUITES["logconcavity"](dims=(), max_p=3, max_m=3)
        assert result.failed == 4
        assert result.failures[0] == "a5 gap (2,0) = 0"
