# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Unit tests for primrows.config
"""

import pytest
import yaml
from pydantic import ValidationError

from primrows.config import (
    CONFIG_ENV_VAR,
    DEFAULT_CONFIG_PATH,
    Settings,
    load_settings,
    resolve_config_path,
)

pytestmark = pytest.mark.unit


class TestDefaults:
    def test_packaged_file(self, monkeypatch):
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        settings = load_settings()
        assert isinstance(settings, Settings)
        assert settings.enumeration.budget == 2_000_000_000
        assert settings.enumeration.hnf_budget == 5_000_000
        assert settings.enumeration.threads == 1
        assert settings.enumeration.max_dimension == 3
        assert settings.orbits.global_tuple_limit == 10_000
        assert settings.density.max_primes == 100_000
        assert settings.output.significant_digits == 12
        assert settings.output.format == "plain"
        assert settings.logging.level == "WARNING"

    def test_settings_are_frozen(self):
        settings = load_settings()
        with pytest.raises(ValidationError):
            settings.enumeration.threads = 8

    def test_cached(self):
        assert load_settings() is load_settings()


class TestResolution:
    def test_explicit_path_wins(self, monkeypatch, tmp_path):
        monkeypatch.setenv(CONFIG_ENV_VAR, "/somewhere/else.yaml")
        assert resolve_config_path(str(tmp_path / "a.yaml")) == tmp_path / "a.yaml"
        assert str(resolve_config_path()) == "/somewhere/else.yaml"

    def test_default(self, monkeypatch):
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        assert resolve_config_path() == DEFAULT_CONFIG_PATH

    def test_override_file(self, config_with):
        path = config_with(enumeration={"threads": 4}, logging={"level": "debug"})
        settings = load_settings()
        assert settings.enumeration.threads == 4
        assert settings.logging.level == "DEBUG"
        assert load_settings(str(path)) is settings


class TestInvalidFiles:
    def test_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_settings(str(tmp_path / "missing.yaml"))

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="mapping"):
            load_settings(str(path))

    def test_missing_section(self, tmp_path):
        with open(DEFAULT_CONFIG_PATH) as f:
            raw = yaml.safe_load(f)
        del raw["density"]
        path = tmp_path / "partial.yaml"
        path.write_text(yaml.safe_dump(raw))
        with pytest.raises(ValidationError):
            load_settings(str(path))

    @pytest.mark.parametrize(
        "section,values",
        [
            ("enumeration", {"threads": 0}),
            ("enumeration", {"budget": -5}),
            ("output", {"format": "xml"}),
            ("logging", {"level": "LOUD"}),
        ],
    )
    def test_bad_values(self, tmp_path, section, values):
        with open(DEFAULT_CONFIG_PATH) as f:
            raw = yaml.safe_load(f)
        raw[section].update(values)
        path = tmp_path / f"bad-{section}.yaml"
        path.write_text(yaml.safe_dump(raw))
        with pytest.raises(ValidationError):
            load_settings(str(path))
