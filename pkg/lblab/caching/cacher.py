"""The cacher module contains the Cacher mixin, which stores and reloads intermediate results on disk."""

import io
import pickle
from pathlib import Path
from typing import Any, Literal, TypedDict

import numpy as np

from lblab.logging import Logger
from lblab.utils import atomic_write


class CacheArgs(TypedDict):
    """The cache arguments.

    :param storage_type: ``.npy`` for a single numpy array, ``.pkl`` for any picklable object.
    :param storage_path: Directory holding the cache files.
    """

    storage_type: Literal[".npy", ".pkl"]
    storage_path: str


class Cacher(Logger):
    """Mixin that stores data under ``<storage_path>/<name><storage_type>``.

    Files are written atomically, so a cache entry is either complete or absent.

    Methods
    -------
    .. code-block:: python
        def cache_exists(name: str, cache_args: CacheArgs | None = None) -> bool: # Check if the cache exists

        def _get_cache(name: str, cache_args: CacheArgs | None = None) -> Any: # Load the cache

        def _store_cache(name: str, data: Any, cache_args: CacheArgs | None = None) -> None: # Store data
    """

    @staticmethod
    def _cache_path(name: str, cache_args: CacheArgs) -> Path:
        if "storage_type" not in cache_args or "storage_path" not in cache_args:
            raise ValueError("cache_args must contain storage_type and storage_path")
        if cache_args["storage_type"] not in (".npy", ".pkl"):
            raise ValueError(f"storage_type is {cache_args['storage_type']}, must be .npy or .pkl")
        return Path(cache_args["storage_path"]) / f"{name}{cache_args['storage_type']}"

    def cache_exists(self, name: str, cache_args: CacheArgs | None = None) -> bool:
        """Check if the cache exists.

        :param name: The name of the cache.
        :param cache_args: The cache arguments.
        :return: True if the cache exists, False otherwise.
        """
        if not cache_args:
            return False
        path = self._cache_path(name, cache_args)
        self.log_to_debug(f"Checking if cache exists at {path}")
        return path.exists()

    def _get_cache(self, name: str, cache_args: CacheArgs | None = None) -> Any:  # noqa: ANN401
        """Load the cache.

        :param name: The name of the cache.
        :param cache_args: The cache arguments.
        :return: The cached data.
        """
        if not cache_args:
            return None
        path = self._cache_path(name, cache_args)
        self.log_to_debug(f"Loading cache from {path}")
        if cache_args["storage_type"] == ".npy":
            return np.load(path)
        with path.open("rb") as file:
            return pickle.load(file)  # noqa: S301

    def _store_cache(self, name: str, data: Any, cache_args: CacheArgs | None = None) -> None:  # noqa: ANN401
        """Store data in the cache.

        :param name: The name of the cache.
        :param data: The data to store.
        :param cache_args: The cache arguments.
        """
        if not cache_args:
            return
        path = self._cache_path(name, cache_args)
        self.log_to_debug(f"Storing cache to {path}")
        buffer = io.BytesIO()
        if cache_args["storage_type"] == ".npy":
            np.save(buffer, data)
        else:
            pickle.dump(data, buffer, protocol=pickle.HIGHEST_PROTOCOL)
        atomic_write(path, buffer.getvalue())
