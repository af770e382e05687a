"""Core module - configuration and errors."""

from src.core.config import RunConfig, settings

__all__ = ["settings", "RunConfig"]
