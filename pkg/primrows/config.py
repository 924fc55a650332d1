# Copyright The primrows Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0

"""
Configuration loading for primrows.

Defaults are read from the packaged config.yaml. Set PRIMROWS_CONFIG to the
path of another YAML file to replace them. Missing or malformed files are an
error: there is no fallback to built-in values.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "PRIMROWS_CONFIG"
DEFAULT_CONFIG_PATH = Path(__file__).parent / "config.yaml"


class EnumerationSettings(BaseModel):
    """Caps and parallelism for the brute-force lattice oracle."""

    model_config = ConfigDict(frozen=True)

    budget: int = Field(..., gt=0, description="Max candidate visits for count_ball")
    hnf_budget: int = Field(..., gt=0, description="Max matrices from enumerate_hnf")
    threads: int = Field(..., ge=1, le=256)
    max_dimension: int = Field(..., ge=2)
    max_norm_sq: int = Field(..., ge=0)


class OrbitSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    global_tuple_limit: int = Field(..., ge=1)


class DensitySettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_primes: int = Field(..., ge=1)


class OutputSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    significant_digits: int = Field(..., ge=1, le=40)
    format: Literal["plain", "csv", "json"]


class LoggingSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    level: str

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        """
        Normalize and check a logging level name.

        Args:
            v: Level name such as 'info' or 'WARNING'

        Returns:
            Upper-case level name

        Raises:
            ValueError: If the name is not a standard logging level
        """
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown logging level: {v}")
        return level


class Settings(BaseModel):
    """Complete, validated primrows configuration."""

    model_config = ConfigDict(frozen=True)

    enumeration: EnumerationSettings
    orbits: OrbitSettings
    density: DensitySettings
    output: OutputSettings
    logging: LoggingSettings


def resolve_config_path(path: Optional[str] = None) -> Path:
    """
    Decide which configuration file to read.

    Args:
        path: Explicit path (e.g. from --config); wins over the environment

    Returns:
        Path to the YAML file
    """
    if path:
        return Path(path)
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return Path(env_path)
    return DEFAULT_CONFIG_PATH


@lru_cache(maxsize=8)
def _load_settings_from(config_path: Path) -> Settings:
    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, "r") as f:
        raw = yaml.safe_load(f)

    if not isinstance(raw, dict):
        raise ValueError(f"Configuration file {config_path} must contain a mapping")

    settings = Settings(**raw)
    logger.debug(f"Loaded settings from {config_path}")
    return settings


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Load and validate settings.

    Args:
        path: Optional explicit path to a YAML configuration file

    Returns:
        Immutable Settings instance (cached per resolved path)

    Raises:
        FileNotFoundError: If the configuration file does not exist
        ValueError: If the file content is not a valid configuration
    """
    return _load_settings_from(resolve_config_path(path).resolve())
