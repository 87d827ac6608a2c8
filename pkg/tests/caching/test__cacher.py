import numpy as np
import pytest

from lblab.caching import Cacher
from tests.constants import TEMP_DIR


class TestCacher:
    cache_path = TEMP_DIR

    @pytest.fixture(autouse=True)
    def run_always(self, setup_temp_dir):
        pass

    def test_cacher_init(self):
        c = Cacher()
        assert c is not None

    def test__cache_exists_no_cache_args(self):
        c = Cacher()
        assert c.cache_exists("test") is False

    def test__cache_exists_no_storage_type(self):
        c = Cacher()
        with pytest.raises(ValueError):
            c.cache_exists("test", {"storage_path": "test"})

    def test__cache_exists_unsupported_storage_type(self):
        c = Cacher()
        with pytest.raises(ValueError):
            c.cache_exists("test", {"storage_type": ".parquet", "storage_path": f"{self.cache_path}"})

    def test__cache_exists_storage_type_npy(self):
        c = Cacher()
        assert c.cache_exists("test", {"storage_type": ".npy", "storage_path": f"{self.cache_path}"}) is False

    def test__cache_exists_storage_type_npy_exists(self):
        c = Cacher()
        with open(self.cache_path / "test.npy", "w") as f:
            f.write("test")
        assert c.cache_exists("test", {"storage_type": ".npy", "storage_path": f"{self.cache_path}"}) is True

    def test__get_cache_no_cache_args(self):
        c = Cacher()
        assert c._get_cache("test") is None

    def test__store_cache_npy(self):
        c = Cacher()
        cache_args = {"storage_type": ".npy", "storage_path": f"{self.cache_path}"}
        x = np.arange(12, dtype=np.float64).reshape(3, 4)
        c._store_cache("test", x, cache_args)
        assert c.cache_exists("test", cache_args)
        np.testing.assert_array_equal(c._get_cache("test", cache_args), x)

    def test__store_cache_pkl(self):
        c = Cacher()
        cache_args = {"storage_type": ".pkl", "storage_path": f"{self.cache_path}"}
        data = {"scores": np.array([0.1, 0.9]), "ids": ("a", "b")}
        c._store_cache("test", data, cache_args)
        loaded = c._get_cache("test", cache_args)
        assert loaded["ids"] == ("a", "b")
        np.testing.assert_array_equal(loaded["scores"], data["scores"])

    def test__store_cache_creates_directory(self):
        c = Cacher()
        cache_args = {"storage_type": ".pkl", "storage_path": f"{self.cache_path / 'nested' / 'dir'}"}
        c._store_cache("test", [1, 2], cache_args)
        assert c._get_cache("test", cache_args) == [1, 2]
        assert not list((self.cache_path / "nested" / "dir").glob("*.tmp"))
