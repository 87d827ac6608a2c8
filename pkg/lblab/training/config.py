"""Configuration of a learnability experiment: model, optimizer and run settings."""

import math
import os
from dataclasses import asdict, dataclass, field
from typing import Annotated, Any, Literal

from annotated_types import Ge, Gt, Interval

from lblab.errors import InvalidInputError

Activation = Literal["relu", "tanh"]
InitScheme = Literal["he", "lecun"]
OptimizerKind = Literal["sgd", "adam", "rmsprop"]

THREADS_ENV = "LBLAB_THREADS"

DEFAULT_LEARNING_RATES: dict[str, float] = {
    "sgd": 0.01,
    "adam": 0.001,
    "rmsprop": 0.001,
}


@dataclass(frozen=True)
class ModelSpec:
    """Multilayer perceptron with a softmax output.

    :param layer_sizes: Input dimension, hidden widths and class count.
    :param activation: Activation of the hidden layers.
    :param init_scheme: Fan-in scaled weight initialization, ``he`` (std sqrt(2/fan_in)) or ``lecun`` (std sqrt(1/fan_in)).
    """

    layer_sizes: tuple[int, ...]
    activation: Activation = "relu"
    init_scheme: InitScheme = "he"

    def __post_init__(self) -> None:
        """Validate the architecture."""
        object.__setattr__(self, "layer_sizes", tuple(int(size) for size in self.layer_sizes))
        if len(self.layer_sizes) < 2:
            raise InvalidInputError(f"A model needs at least an input and an output layer, got {self.layer_sizes}")
        if min(self.layer_sizes) < 1:
            raise InvalidInputError(f"Layer sizes must be positive, got {self.layer_sizes}")
        if self.activation not in ("relu", "tanh"):
            raise InvalidInputError(f"Unknown activation '{self.activation}'")
        if self.init_scheme not in ("he", "lecun"):
            raise InvalidInputError(f"Unknown init scheme '{self.init_scheme}'")

    @property
    def input_dim(self) -> int:
        """Number of input features."""
        return self.layer_sizes[0]

    @property
    def n_classes(self) -> int:
        """Number of output classes L."""
        return self.layer_sizes[-1]


@dataclass(frozen=True)
class OptimizerSpec:
    """First-order optimizer and its hyperparameters.

    :param kind: ``sgd``, ``adam`` or ``rmsprop``.
    :param learning_rate: Step size. Zero is accepted and freezes the parameters.
    :param momentum: Classical momentum of sgd.
    :param beta1: Adam first-moment decay.
    :param beta2: Adam second-moment decay.
    :param rho: RMSprop squared-gradient decay.
    :param epsilon: Denominator stabilizer of adam and rmsprop.
    """

    kind: OptimizerKind = "sgd"
    learning_rate: Annotated[float, Ge(0)] = 0.01
    momentum: Annotated[float, Interval(ge=0, lt=1)] = 0.0
    beta1: Annotated[float, Interval(gt=0, lt=1)] = 0.9
    beta2: Annotated[float, Interval(gt=0, lt=1)] = 0.999
    rho: Annotated[float, Interval(gt=0, lt=1)] = 0.9
    epsilon: Annotated[float, Gt(0)] = 1e-8

    def __post_init__(self) -> None:
        """Validate the hyperparameters."""
        if self.kind not in DEFAULT_LEARNING_RATES:
            raise InvalidInputError(f"Unknown optimizer '{self.kind}', expected one of {sorted(DEFAULT_LEARNING_RATES)}")
        if not (math.isfinite(self.learning_rate) and self.learning_rate >= 0):
            raise InvalidInputError(f"Learning rate must be a non-negative number, got {self.learning_rate}")
        if not 0 <= self.momentum < 1:
            raise InvalidInputError(f"Momentum must lie in [0, 1), got {self.momentum}")
        for name in ("beta1", "beta2", "rho"):
            if not 0 < getattr(self, name) < 1:
                raise InvalidInputError(f"{name} must lie in (0, 1), got {getattr(self, name)}")
        if not self.epsilon > 0:
            raise InvalidInputError(f"Epsilon must be positive, got {self.epsilon}")

    @classmethod
    def default(cls, kind: OptimizerKind) -> "OptimizerSpec":
        """Return the optimizer with its default learning rate (sgd 0.01, adam 0.001, rmsprop 0.001).

        :param kind: The optimizer kind.
        :return: The optimizer spec.
        """
        if kind not in DEFAULT_LEARNING_RATES:
            raise InvalidInputError(f"Unknown optimizer '{kind}', expected one of {sorted(DEFAULT_LEARNING_RATES)}")
        return cls(kind=kind, learning_rate=DEFAULT_LEARNING_RATES[kind])


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a prediction history, given the dataset.

    :param model: The model architecture.
    :param optimizer: The optimizer.
    :param epochs: Number of epochs T, one recorded step per epoch.
    :param runs: Number of independently seeded runs R.
    :param batch_size: Mini-batch size.
    :param base_seed: Run r uses seed ``base_seed + r``.
    :param shuffle_each_epoch: Draw a new batch order every epoch.
    """

    model: ModelSpec
    optimizer: OptimizerSpec = field(default_factory=OptimizerSpec)
    epochs: Annotated[int, Gt(0)] = 50
    runs: Annotated[int, Gt(0)] = 5
    batch_size: Annotated[int, Gt(0)] = 32
    base_seed: Annotated[int, Ge(0)] = 0
    shuffle_each_epoch: bool = True

    def __post_init__(self) -> None:
        """Validate the counts."""
        for name in ("epochs", "runs", "batch_size"):
            if int(getattr(self, name)) < 1:
                raise InvalidInputError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.base_seed < 0:
            raise InvalidInputError(f"Seeds must be non-negative, got {self.base_seed}")

    def seed(self, run: int) -> int:
        """Return the seed of one run.

        :param run: The 0-based run index.
        :return: The seed.
        """
        return self.base_seed + run

    def to_dict(self) -> dict[str, Any]:
        """Return the configuration as plain JSON-compatible data."""
        result = asdict(self)
        result["model"]["layer_sizes"] = list(self.model.layer_sizes)
        return result

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """Rebuild a configuration from :meth:`to_dict` output.

        :param data: The configuration data.
        :return: The configuration.
        """
        try:
            model = ModelSpec(**{**data["model"], "layer_sizes": tuple(data["model"]["layer_sizes"])})
            optimizer = OptimizerSpec(**data.get("optimizer", {}))
            rest = {key: value for key, value in data.items() if key not in ("model", "optimizer")}
            return cls(model=model, optimizer=optimizer, **rest)
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Invalid run configuration: {e}") from e


def resolve_threads(n_jobs: int | None = None) -> int:
    """Return the number of parallel workers.

    :param n_jobs: Explicit worker count. None reads ``LBLAB_THREADS`` (default 1).
    :return: A positive worker count.
    """
    if n_jobs is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            n_jobs = int(raw)
        except ValueError as e:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer, got '{raw}'") from e
    if n_jobs < 1:
        raise InvalidInputError(f"Number of threads must be positive, got {n_jobs}")
    return n_jobs
