# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0
"""
Pytest configuration file for the primrows tests.
"""

import random
from pathlib import Path
from typing import Callable

import pytest
import yaml

from primrows.config import CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH


@pytest.fixture
def small_primes():
    return [2, 3, 5, 7, 11, 13]


@pytest.fixture
def small_k_range():
    return range(1, 61)


@pytest.fixture
def rng():
    """Seeded random source so property checks are reproducible."""
    return random.Random(20240229)


@pytest.fixture
def config_with(tmp_path: Path, monkeypatch) -> Callable[..., Path]:
    """
    Write a configuration file with some values overridden and activate it.

    Usage: config_with(enumeration={"hnf_budget": 10}) returns the file path
    and points PRIMROWS_CONFIG at it for the rest of the test.
    """

    def write(**sections) -> Path:
        with open(DEFAULT_CONFIG_PATH, "r") as f:
            raw = yaml.safe_load(f)
        for section, values in sections.items():
            raw[section].update(values)
        path = tmp_path / "primrows-test.yaml"
        with open(path, "w") as f:
            yaml.safe_dump(raw, f)
        monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
        return path

    return write
