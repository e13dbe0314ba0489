"""Runtime configuration loader: environment variables, then a project .env file, then defaults."""

import logging
import math
import os
from pathlib import Path
from typing import Callable, Optional, TypeVar

from dotenv import dotenv_values

from errors import ConfigError

logger = logging.getLogger(__name__)

T = TypeVar("T")

PREFIX = "RESTRIKT_"

DEFAULTS = {
    "THREADS": "1",
    "MAX_ITER": "64",
    "PANEL_PHASE_BUDGET": repr(math.pi / 2),
    "MAX_SUBDIVISIONS": "1048576",
    "ABS_TOL": "1e-10",
    "BUMP_RADIUS": "0.5",
    "DECAY_TOL": "0.05",
    "LOG_LEVEL": "WARNING",
}


class RuntimeConfig:
    """Loads RESTRIKT_* settings from the environment with a .env fallback."""

    def __init__(self, env_file: Optional[Path] = None):
        """
        Initialize configuration loader.

        Args:
            env_file: Optional .env path; defaults to the project root .env
        """
        if env_file is None:
            env_file = Path(__file__).resolve().parents[2] / ".env"
        self._file_values = {k: v for k, v in dotenv_values(env_file).items() if v is not None} if env_file.exists() else {}

    def get_config_value(self, key: str, default: Optional[str] = None) -> Optional[str]:
        """
        Get configuration value with fallback chain.

        Fallback order:
        1. Environment variable
        2. .env file at the project root
        3. Default value

        Args:
            key: Configuration key (with or without the RESTRIKT_ prefix)
            default: Default value if not found

        Returns:
            Configuration value or default
        """
        name = key if key.startswith(PREFIX) else f"{PREFIX}{key}"
        value = os.getenv(name)
        if value:
            return value
        value = self._file_values.get(name)
        if value:
            return value
        return default if default is not None else DEFAULTS.get(name[len(PREFIX) :])

    def _typed(self, key: str, cast: Callable[[str], T], check: Callable[[T], bool], expected: str) -> T:
        raw = self.get_config_value(key)
        try:
            value = cast(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{PREFIX}{key}={raw!r} is not {expected}", {"key": f"{PREFIX}{key}", "value": raw})
        if not check(value):
            raise ConfigError(f"{PREFIX}{key}={raw!r} is not {expected}", {"key": f"{PREFIX}{key}", "value": raw})
        return value

    def get_int(self, key: str) -> int:
        return self._typed(key, int, lambda v: v > 0, "a positive integer")

    def get_float(self, key: str) -> float:
        return self._typed(key, float, lambda v: math.isfinite(v) and v > 0, "a positive number")

    @property
    def threads(self) -> int:
        return self.get_int("THREADS")

    def threads_override(self) -> Optional[int]:
        """RESTRIKT_THREADS when explicitly set, which wins over the --threads flag."""
        if os.getenv(f"{PREFIX}THREADS") or self._file_values.get(f"{PREFIX}THREADS"):
            return self.threads
        return None

    @property
    def max_iter(self) -> int:
        return self.get_int("MAX_ITER")

    @property
    def decay_tol(self) -> float:
        return self.get_float("DECAY_TOL")

    @property
    def log_level(self) -> str:
        level = self.get_config_value("LOG_LEVEL").upper()
        if level not in logging.getLevelNamesMapping():
            raise ConfigError(f"{PREFIX}LOG_LEVEL={level!r} is not a logging level", {"key": f"{PREFIX}LOG_LEVEL"})
        return level


# Global config instance
_config: Optional[RuntimeConfig] = None


def get_config() -> RuntimeConfig:
    """Get global configuration instance."""
    global _config
    if _config is None:
        _config = RuntimeConfig()
    return _config
