"""Module containing the logging mixin for the lblab package."""

from .logger import LOG_FORMAT, Logger, configure_logging

__all__ = [
    "LOG_FORMAT",
    "Logger",
    "configure_logging",
]
