import pytest

from lblab.utils import atomic_write
from tests.constants import TEMP_DIR


class TestAtomicWrite:
    @pytest.fixture(autouse=True)
    def run_always(self, setup_temp_dir):
        pass

    def test_text(self):
        path = atomic_write(TEMP_DIR / "a" / "b.txt", "line\n")
        assert path.read_bytes() == b"line\n"

    def test_bytes_overwrite(self):
        atomic_write(TEMP_DIR / "c.bin", b"old")
        atomic_write(TEMP_DIR / "c.bin", b"new")
        assert (TEMP_DIR / "c.bin").read_bytes() == b"new"
        assert [p.name for p in TEMP_DIR.iterdir()] == ["c.bin"]
