import pytest

from lblab.errors import InvalidInputError
from lblab.training import THREADS_ENV, ModelSpec, OptimizerSpec, RunConfig, resolve_threads


class TestModelSpec:
    def test_dims(self):
        spec = ModelSpec([8, 16, 4])
        assert spec.layer_sizes == (8, 16, 4)
        assert (spec.input_dim, spec.n_classes) == (8, 4)

    @pytest.mark.parametrize("layer_sizes", [(3,), (3, 0, 2)])
    def test_invalid_layers(self, layer_sizes):
        with pytest.raises(InvalidInputError):
            ModelSpec(layer_sizes)

    def test_invalid_activation(self):
        with pytest.raises(InvalidInputError):
            ModelSpec((2, 2), activation="sigmoid")


class TestOptimizerSpec:
    def test_defaults(self):
        assert OptimizerSpec.default("sgd").learning_rate == 0.01
        assert OptimizerSpec.default("adam").learning_rate == 0.001
        assert OptimizerSpec.default("rmsprop").learning_rate == 0.001

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "adagrad"},
            {"learning_rate": -0.1},
            {"learning_rate": float("nan")},
            {"momentum": 1.0},
            {"beta1": 0.0},
            {"beta2": 1.0},
            {"rho": 1.5},
            {"epsilon": 0.0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidInputError):
            OptimizerSpec(**kwargs)


class TestRunConfig:
    def test_seed(self):
        assert RunConfig(ModelSpec((2, 2)), base_seed=10).seed(3) == 13

    @pytest.mark.parametrize("kwargs", [{"epochs": 0}, {"runs": 0}, {"batch_size": 0}, {"base_seed": -1}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidInputError):
            RunConfig(ModelSpec((2, 2)), **kwargs)

    def test_dict_round_trip(self):
        config = RunConfig(ModelSpec((8, 64, 64, 4), "tanh", "lecun"), OptimizerSpec("adam", 0.002, beta2=0.99), epochs=7, runs=2, batch_size=16, base_seed=3, shuffle_each_epoch=False)
        data = config.to_dict()
        assert data["model"]["layer_sizes"] == [8, 64, 64, 4]
        assert RunConfig.from_dict(data) == config

    def test_from_invalid_dict(self):
        with pytest.raises(InvalidInputError):
            RunConfig.from_dict({"optimizer": {}})


class TestResolveThreads:
    def test_default(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert resolve_threads() == 1

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "4")
        assert resolve_threads() == 4
        assert resolve_threads(2) == 2

    @pytest.mark.parametrize("value", ["zero", "0", "-2"])
    def test_invalid_environment(self, monkeypatch, value):
        monkeypatch.setenv(THREADS_ENV, value)
        with pytest.raises(InvalidInputError):
            resolve_threads()
