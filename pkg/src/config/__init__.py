"""Runtime configuration from the environment and .env."""

from .runtime import RuntimeConfig, get_config

__all__ = ["RuntimeConfig", "get_config"]
