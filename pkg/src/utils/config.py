"""
Configuration Utilities

Loads numerical settings for SyncLab from config/settings.yml, the process environment
and an optional .env file.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "settings.yml"

SolverName = Literal["householder_ql", "lapack"]


class SpectraSettings(BaseModel):
    tol: float = Field(1e-9, gt=0)
    multiplicity_tol: float = Field(1e-6, gt=0)
    solver: SolverName = "householder_ql"


class VerifySettings(BaseModel):
    strict_margin: float = Field(1e-12, ge=0)
    equality_tol: float = Field(1e-9, gt=0)
    identity_tol: float = Field(1e-6, gt=0)
    max_cycle_search_nodes: int = Field(14, ge=4)
    ratio_bound: float = Field(0.4, gt=0, le=1)


class ExperimentSettings(BaseModel):
    scale_free_seed_graph: str = "ba:50:2:12345"
    default_seed: int = 20070601


class SearchSettings(BaseModel):
    solver: SolverName = "lapack"
    max_exhaustive_nodes: int = Field(8, ge=2)
    chunk_bits: int = Field(16, ge=4, le=24)
    sample_chunk: int = Field(4096, ge=1)
    workers: int = Field(1, ge=1)
    anneal_t0: float = Field(0.1, gt=0)
    anneal_cooling: float = Field(0.999, gt=0, le=1)
    anneal_iterations: int = Field(100_000, ge=0)
    anneal_restarts: int = Field(8, ge=1)


class LoggingSettings(BaseModel):
    level: str = "INFO"
    log_dir: Optional[str] = None


class DebugSettings(BaseModel):
    dump_failures: bool = True
    output_dir: str = "debug_output"


class Settings(BaseModel):
    """Validated settings for one environment section."""

    environment: str = "development"
    spectra: SpectraSettings = Field(default_factory=SpectraSettings)
    verify: VerifySettings = Field(default_factory=VerifySettings)
    experiments: ExperimentSettings = Field(default_factory=ExperimentSettings)
    search: SearchSettings = Field(default_factory=SearchSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    debug: DebugSettings = Field(default_factory=DebugSettings)


# Environment variable -> (section, key)
_ENV_OVERRIDES = {
    "SYNCLAB_TOL": ("spectra", "tol"),
    "SYNCLAB_SOLVER": ("spectra", "solver"),
    "SYNCLAB_LOG_LEVEL": ("logging", "level"),
    "SYNCLAB_LOG_DIR": ("logging", "log_dir"),
    "SYNCLAB_WORKERS": ("search", "workers"),
}


def _load_yaml_section(config_path: Path, environment: str) -> dict[str, Any]:
    """Load one environment section from the YAML settings file."""
    if not config_path.exists():
        logger.warning(f"Settings file {config_path} not found, using defaults")
        return {}

    try:
        with open(config_path, encoding="utf-8") as f:
            yaml_config = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        logger.warning(f"Failed to load settings from {config_path}: {e}")
        return {}

    section = yaml_config.get(environment)
    if section is None:
        logger.warning(f"No '{environment}' section in {config_path}, using 'default'")
        section = yaml_config.get("default", {})
    return dict(section)


def load_settings(config_path: Optional[str] = None, environment: Optional[str] = None) -> Settings:
    """
    Build Settings from YAML, then apply SYNCLAB_* environment overrides.

    Args:
        config_path: Path to a settings YAML file (defaults to config/settings.yml)
        environment: Section name (defaults to SYNCLAB_ENV, then 'development')
    """
    load_dotenv()
    environment = environment or os.getenv("SYNCLAB_ENV", "development")
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH

    raw = _load_yaml_section(path, environment)
    raw = {section: dict(values or {}) for section, values in raw.items()}

    for env_name, (section, key) in _ENV_OVERRIDES.items():
        value = os.getenv(env_name)
        if value is not None:
            raw.setdefault(section, {})[key] = value

    return Settings(environment=environment, **raw)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get process-wide settings (loaded once)."""
    return load_settings()


def reset_settings() -> None:
    """Drop cached settings so the next get_settings() reloads them."""
    get_settings.cache_clear()
