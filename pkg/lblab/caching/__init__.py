"""Caching module for lblab."""

from .cacher import CacheArgs, Cacher

__all__ = [
    "CacheArgs",
    "Cacher",
]
