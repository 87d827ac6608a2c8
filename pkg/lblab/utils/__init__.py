"""Utility functions for lblab."""

from .files import atomic_write

__all__ = [
    "atomic_write",
]
