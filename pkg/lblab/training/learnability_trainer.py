"""LearnabilityTrainer trains an MLP for several seeded runs and records the true-label probability after every epoch."""

from dataclasses import dataclass, field
from typing import Annotated, Any

import numpy as np
import numpy.typing as npt
from annotated_types import Gt
from joblib import Parallel, delayed, hash
from tqdm import tqdm

from lblab.caching import CacheArgs
from lblab.data import Dataset
from lblab.errors import InvalidInputError
from lblab.metrics import PredictionHistory

from .config import RunConfig, resolve_threads
from .mlp import MLP, backward, cross_entropy, forward, init_model
from .optimizers import OptimizerState, optimizer_step
from .training_block import TrainingBlock

RECORD_CHUNK = 4096


@dataclass(frozen=True)
class TrainReport:
    """Outcome of :meth:`LearnabilityTrainer.train_and_record`.

    :param history: Recorded probabilities, shape (R, T, N).
    :param final_train_accuracy: Training accuracy of every run after the last epoch.
    :param loss_curves: Mean training cross-entropy of every run after every epoch, shape (R, T).
    :param models: Final model of every run.
    """

    history: PredictionHistory
    final_train_accuracy: npt.NDArray[np.float64]
    loss_curves: npt.NDArray[np.float64]
    models: tuple[MLP, ...] = field(default=(), repr=False, compare=False)


def record_predictions(model: MLP, features: npt.NDArray[np.float64], class_indices: npt.NDArray[np.int64]) -> tuple[npt.NDArray[np.float64], float, float]:
    """Evaluate a model on every sample in canonical order without touching its parameters.

    :param model: The model.
    :param features: All training features.
    :param class_indices: 0-based true classes.
    :return: True-label probabilities, mean cross-entropy and accuracy.
    """
    true_probs = np.empty(features.shape[0], dtype=np.float64)
    correct = 0
    loss_sum = 0.0
    for start in range(0, features.shape[0], RECORD_CHUNK):
        stop = start + RECORD_CHUNK
        probabilities = forward(model, features[start:stop])
        targets = class_indices[start:stop]
        true_probs[start:stop] = probabilities[np.arange(targets.size), targets]
        loss_sum += cross_entropy(probabilities, targets) * targets.size
        correct += int((probabilities.argmax(axis=1) == targets).sum())
    return true_probs, loss_sum / features.shape[0], correct / features.shape[0]


@dataclass
class LearnabilityTrainer(TrainingBlock):
    """Train the configured MLP for R seeded runs and record a prediction history.

    Run r is seeded with ``base_seed + r``: the seed fixes the initialization and, through ``[seed, 1]``, the batch order.
    After every epoch the whole training set is evaluated in canonical order; shuffling only changes the order in which
    batches update the model.

    Parameters
    ----------
    - `config` (RunConfig): Model, optimizer, epochs, runs, batch size and seed.
    - `n_jobs` (int | None): Runs trained in parallel. None reads ``LBLAB_THREADS``.
    - `show_progress` (bool): Show a progress bar over the epochs of every run.

    Usage:
    .. code-block:: python
        from lblab.data import make_preset
        from lblab.training import LearnabilityTrainer, ModelSpec, OptimizerSpec, RunConfig

        dataset = make_preset("standard")
        config = RunConfig(ModelSpec((8, 16, 4)), OptimizerSpec.default("sgd"), epochs=50, runs=3)
        report = LearnabilityTrainer(config).train_and_record(dataset)
    """

    config: RunConfig
    n_jobs: Annotated[int, Gt(0)] | None = field(default=None, repr=False, compare=False)
    show_progress: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Post init method for the LearnabilityTrainer class."""
        self.models: list[MLP] = []
        self._data_hash = ""
        if self.config.optimizer.learning_rate == 0:
            self.log_to_warning("Learning rate is 0, parameters will not move")
        super().__post_init__()

    def get_hash(self) -> str:
        """Get the hash of the block, extended with the fingerprint of the last dataset.

        :return: The hash of the block.
        """
        return f"{self._hash}_{self._data_hash}" if self._data_hash else self._hash

    def train_and_record(self, dataset: Dataset, cache_args: CacheArgs | None = None) -> TrainReport:
        """Train R runs on the dataset and record the true-label probability of every sample after every epoch.

        :param dataset: The training set.
        :param cache_args: Optional cache for the report, keyed by configuration and dataset.
        :return: The training report.
        """
        if dataset.n_features != self.config.model.input_dim:
            raise InvalidInputError(f"Model expects {self.config.model.input_dim} features, dataset has {dataset.n_features}")
        if dataset.n_classes != self.config.model.n_classes:
            raise InvalidInputError(f"Model has {self.config.model.n_classes} outputs, dataset has {dataset.n_classes} classes")
        self._data_hash = hash((dataset.features, dataset.labels, dataset.sample_ids))
        report, _ = self.train(dataset.features, dataset.labels, cache_args=cache_args, sample_ids=dataset.sample_ids)
        self.models = list(report.models)
        return report

    def custom_train(self, x: npt.NDArray[np.float64], y: npt.NDArray[np.int64], **train_args: Any) -> TrainReport:
        """Train all runs.

        :param x: Features of shape (N, D).
        :param y: 1-based labels.
        :param train_args: The keyword arguments.
            - sample_ids: Ids of the samples, ``row-1``, ``row-2``, ... if absent.
        :return: The training report.
        """
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        sample_ids = tuple(train_args.get("sample_ids") or (f"row-{k}" for k in range(1, len(y) + 1)))
        n_classes = self.config.model.n_classes
        bad = np.flatnonzero((y < 1) | (y > n_classes))
        if bad.size:
            raise InvalidInputError(f"Label {y[bad[0]]} of sample '{sample_ids[bad[0]]}' is outside 1..{n_classes}")

        config = self.config
        self.log_section_separator(f"Training {config.runs} runs of {list(config.model.layer_sizes)} with {config.optimizer.kind}")
        n_jobs = resolve_threads(self.n_jobs)
        results = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(self._train_run)(x, y - 1, run) for run in range(config.runs))

        models, histories, losses, accuracies = zip(*results, strict=True)
        report = TrainReport(
            history=PredictionHistory(np.stack(histories), sample_ids, config),
            final_train_accuracy=np.array(accuracies, dtype=np.float64),
            loss_curves=np.stack(losses),
            models=tuple(models),
        )
        self.log_to_terminal(
            f"Done training: final accuracy {report.final_train_accuracy.mean():.4f}, final loss {report.loss_curves[:, -1].mean():.4f} (mean over {config.runs} runs)",
        )
        return report

    def _train_run(
        self,
        x: npt.NDArray[np.float64],
        class_indices: npt.NDArray[np.int64],
        run: int,
    ) -> tuple[MLP, npt.NDArray[np.float64], npt.NDArray[np.float64], float]:
        """Train one run.

        :param x: Features.
        :param class_indices: 0-based true classes.
        :param run: The run index.
        :return: Final model, (T, N) true-label probabilities, per-epoch loss and final accuracy.
        """
        config = self.config
        seed = config.seed(run)
        model = init_model(config.model, seed)
        order_rng = np.random.default_rng([seed, 1])
        state: OptimizerState | None = None
        n = x.shape[0]
        history = np.empty((config.epochs, n), dtype=np.float64)
        losses = np.empty(config.epochs, dtype=np.float64)
        accuracy = 0.0

        pbar = tqdm(range(config.epochs), unit="epoch", desc=f"Run {run + 1}/{config.runs}", disable=not self.show_progress, leave=False)
        for epoch in pbar:
            order = order_rng.permutation(n) if config.shuffle_each_epoch else np.arange(n)
            for start in range(0, n, config.batch_size):
                batch = order[start : start + config.batch_size]
                grads = backward(model, x[batch], class_indices[batch])
                params, state = optimizer_step(state, model.parameters(), grads, config.optimizer)
                model = model.with_parameters(params)

            history[epoch], losses[epoch], accuracy = record_predictions(model, x, class_indices)
            pbar.set_postfix(loss=losses[epoch])
            self.log_to_debug(f"Run {run} epoch {epoch + 1} train loss: {losses[epoch]}")

        return model, history, losses, accuracy

    def custom_predict(self, x: npt.NDArray[np.float64], **pred_args: Any) -> npt.NDArray[np.float64]:
        """Average the class probabilities of the final models of all runs.

        :param x: Features of shape (batch, D).
        :return: Probabilities of shape (batch, L).
        """
        if not self.models:
            raise ValueError("LearnabilityTrainer has no trained models, call train_and_record first")
        return np.mean([forward(model, x) for model in self.models], axis=0)


def train_and_record(dataset: Dataset, config: RunConfig, *, n_jobs: int | None = None, show_progress: bool = False) -> TrainReport:
    """Train ``config.runs`` seeded runs on the dataset and record the prediction history.

    :param dataset: The training set.
    :param config: The run configuration.
    :param n_jobs: Runs trained in parallel. None reads ``LBLAB_THREADS``.
    :param show_progress: Show progress bars.
    :return: The training report.
    """
    return LearnabilityTrainer(config, n_jobs=n_jobs, show_progress=show_progress).train_and_record(dataset)
