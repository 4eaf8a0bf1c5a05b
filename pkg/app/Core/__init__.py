"""Process-level settings read from the environment."""

from .config import Settings, get_settings

__all__ = ["Settings", "get_settings"]
