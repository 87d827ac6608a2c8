import pytest

from lblab.training import TrainingBlock
from tests.constants import TEMP_DIR


class TestTrainingBlock:
    cache_path = TEMP_DIR

    def test_training_block_init(self):
        tb = TrainingBlock()
        assert tb is not None

    def test_training_block_train(self):
        with pytest.raises(NotImplementedError):
            tb = TrainingBlock()
            tb.train(1, 1)

    def test_training_block_predict(self):
        with pytest.raises(NotImplementedError):
            tb = TrainingBlock()
            tb.predict(1)

    def test_training_block_implemented(self):
        class TestTrainingBlockImpl(TrainingBlock):
            def custom_train(self, x: int, y: int) -> int:
                return x + y

            def custom_predict(self, x: int) -> int:
                return x

        tb = TestTrainingBlockImpl()
        assert tb.train(1, 2) == (3, 2)
        assert tb.predict(1) == 1

    @pytest.mark.parametrize("storage_type", [".npy", ".pkl"])
    def test_training_block_caching(self, setup_temp_dir, storage_type):
        calls = []

        class TestTrainingBlockImpl(TrainingBlock):
            def custom_train(self, x: int, y: int) -> int:
                calls.append("train")
                return x + y

            def custom_predict(self, x: int) -> int:
                calls.append("predict")
                return x * 2

        tb = TestTrainingBlockImpl()
        cache_args = {"storage_type": storage_type, "storage_path": f"{self.cache_path}"}

        assert tb.train(1, 2, cache_args=cache_args) == (3, 2)
        assert tb.train(1, 2, cache_args=cache_args) == (3, 2)
        assert tb.predict(4, cache_args=cache_args) == 8
        assert tb.predict(4, cache_args=cache_args) == 8
        assert calls == ["train", "predict"]
