import numpy as np
import pytest
from joblib import hash

from lblab.data import Dataset, make_blobs, make_preset
from lblab.errors import InvalidInputError
from lblab.training import (
    LearnabilityTrainer,
    ModelSpec,
    OptimizerSpec,
    RunConfig,
    forward,
    init_model,
    record_predictions,
    train_and_record,
)
from tests.constants import TEMP_DIR


def _small_dataset() -> Dataset:
    return make_blobs(classes=3, dim=4, per_class=20, spread=0.8, label_noise_fraction=0.1, seed=2)


def _config(**kwargs) -> RunConfig:
    defaults = {"epochs": 4, "runs": 2, "batch_size": 8, "base_seed": 1}
    return RunConfig(ModelSpec((4, 6, 3)), kwargs.pop("optimizer", OptimizerSpec.default("sgd")), **{**defaults, **kwargs})


class TestLearnabilityTrainer:
    def test_history_shape_and_ids(self):
        dataset = _small_dataset()
        report = train_and_record(dataset, _config())
        assert report.history.values.shape == (2, 4, 60)
        assert report.history.sample_ids == dataset.sample_ids
        assert report.loss_curves.shape == (2, 4)
        assert report.final_train_accuracy.shape == (2,)
        assert report.history.config == _config()

    def test_zero_learning_rate_records_initial_predictions(self):
        dataset = _small_dataset()
        config = _config(optimizer=OptimizerSpec("sgd", learning_rate=0.0), epochs=1, runs=1)
        report = train_and_record(dataset, config)
        probabilities = forward(init_model(config.model, config.seed(0)), dataset.features)
        expected = probabilities[np.arange(len(dataset)), dataset.class_indices]
        np.testing.assert_array_equal(report.history.values[0, 0], expected)

    def test_deterministic(self):
        dataset = _small_dataset()
        for kind in ("sgd", "adam", "rmsprop"):
            config = _config(optimizer=OptimizerSpec.default(kind))
            a, b = train_and_record(dataset, config), train_and_record(dataset, config)
            assert np.array_equal(a.history.values, b.history.values)
            assert np.array_equal(a.loss_curves, b.loss_curves)
            assert np.array_equal(a.final_train_accuracy, b.final_train_accuracy)

    def test_parallel_runs_match_sequential(self):
        dataset = _small_dataset()
        sequential = train_and_record(dataset, _config(runs=3), n_jobs=1)
        parallel = train_and_record(dataset, _config(runs=3), n_jobs=3)
        assert np.array_equal(sequential.history.values, parallel.history.values)

    def test_runs_use_their_own_seed(self):
        report = train_and_record(_small_dataset(), _config())
        assert not np.array_equal(report.history.values[0], report.history.values[1])

    def test_shared_seed_shares_initialization(self):
        dataset = _small_dataset()
        sgd = train_and_record(dataset, _config(optimizer=OptimizerSpec("sgd", learning_rate=0.0), epochs=1, runs=1))
        adam = train_and_record(dataset, _config(optimizer=OptimizerSpec("adam", learning_rate=0.0), epochs=1, runs=1))
        assert np.array_equal(sgd.history.values, adam.history.values)

    def test_probabilities_in_unit_interval(self):
        report = train_and_record(_small_dataset(), _config(optimizer=OptimizerSpec("sgd", learning_rate=0.5)))
        assert ((report.history.values >= 0) & (report.history.values <= 1)).all()

    def test_recording_leaves_parameters_unchanged(self):
        dataset = _small_dataset()
        model = init_model(ModelSpec((4, 6, 3)), 0)
        before = hash(model.parameters())
        record_predictions(model, dataset.features, dataset.class_indices)
        assert hash(model.parameters()) == before

    def test_record_predictions_in_chunks(self):
        rng = np.random.default_rng(0)
        model = init_model(ModelSpec((3, 5, 2)), 0)
        x = rng.normal(size=(5000, 3))
        y = rng.integers(0, 2, size=5000)
        p_true, loss, accuracy = record_predictions(model, x, y)
        probabilities = forward(model, x)
        np.testing.assert_allclose(p_true, probabilities[np.arange(5000), y], atol=1e-15)
        assert 0.0 <= accuracy <= 1.0
        assert loss > 0.0

    def test_easy_preset_is_fit(self):
        dataset = make_preset("easy")
        config = RunConfig(ModelSpec((2, 16, 2)), OptimizerSpec.default("sgd"), epochs=50, runs=2)
        report = train_and_record(dataset, config)
        assert (report.final_train_accuracy >= 0.99).all()

    @pytest.mark.parametrize("kind", ["sgd", "adam", "rmsprop"])
    def test_loss_decreases_on_easy_preset(self, kind):
        dataset = make_preset("easy")
        config = RunConfig(ModelSpec((2, 16, 2)), OptimizerSpec.default(kind), epochs=20, runs=2)
        report = train_and_record(dataset, config)
        assert (report.loss_curves[:, -1] < report.loss_curves[:, 0]).all()

    def test_label_out_of_range_names_sample(self):
        trainer = LearnabilityTrainer(_config(), show_progress=False)
        with pytest.raises(InvalidInputError, match="'b'"):
            trainer.train(np.zeros((2, 4)), np.array([1, 4]), sample_ids=("a", "b"))

    def test_feature_mismatch(self):
        dataset = make_blobs(classes=3, dim=5, per_class=3, spread=0.5)
        with pytest.raises(InvalidInputError):
            train_and_record(dataset, _config())

    @pytest.mark.parametrize("layers", [(4, 6, 2), (4, 6, 5)])
    def test_output_size_must_match_classes(self, layers):
        config = RunConfig(ModelSpec(layers), OptimizerSpec.default("sgd"), epochs=1, runs=1)
        with pytest.raises(InvalidInputError, match="outputs"):
            train_and_record(_small_dataset(), config)

    def test_predict_averages_models(self):
        dataset = _small_dataset()
        trainer = LearnabilityTrainer(_config(), show_progress=False)
        report = trainer.train_and_record(dataset)
        predicted = trainer.predict(dataset.features[:5])
        expected = np.mean([forward(model, dataset.features[:5]) for model in report.models], axis=0)
        np.testing.assert_allclose(predicted, expected)
        np.testing.assert_allclose(predicted.sum(axis=1), 1.0, atol=1e-9)

    def test_predict_before_training(self):
        with pytest.raises(ValueError):
            LearnabilityTrainer(_config()).predict(np.zeros((1, 4)))

    def test_hash_depends_on_config_not_threads(self):
        a = LearnabilityTrainer(_config(), n_jobs=1)
        b = LearnabilityTrainer(_config(), n_jobs=4)
        c = LearnabilityTrainer(_config(epochs=5))
        assert a.get_hash() == b.get_hash()
        assert a.get_hash() != c.get_hash()


class TestLearnabilityTrainerCache:
    @pytest.fixture(autouse=True)
    def run_always(self, setup_temp_dir):
        pass

    def test_report_is_cached(self):
        dataset = _small_dataset()
        cache_args = {"storage_type": ".pkl", "storage_path": f"{TEMP_DIR}"}
        first = LearnabilityTrainer(_config(), show_progress=False)
        report = first.train_and_record(dataset, cache_args=cache_args)
        assert len(list(TEMP_DIR.glob("*.pkl"))) == 1

        second = LearnabilityTrainer(_config(), show_progress=False)
        second.custom_train = None  # any training attempt would fail
        cached = second.train_and_record(dataset, cache_args=cache_args)
        assert np.array_equal(cached.history.values, report.history.values)
        assert len(second.models) == 2

    def test_cache_key_includes_dataset(self):
        cache_args = {"storage_type": ".pkl", "storage_path": f"{TEMP_DIR}"}
        trainer = LearnabilityTrainer(_config(), show_progress=False)
        trainer.train_and_record(_small_dataset(), cache_args=cache_args)
        other = make_blobs(classes=3, dim=4, per_class=20, spread=0.8, label_noise_fraction=0.1, seed=3)
        trainer.train_and_record(other, cache_args=cache_args)
        assert len(list(TEMP_DIR.glob("*.pkl"))) == 2
