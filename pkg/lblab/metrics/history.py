"""Value types of the learnability computation: prediction histories, scores, ranks."""

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

from lblab.errors import AlignmentError, InvalidInputError

if TYPE_CHECKING:
    from lblab.training.config import RunConfig


def _frozen(array: npt.ArrayLike, dtype: type) -> npt.NDArray[np.generic]:
    result = np.array(array, dtype=dtype, copy=True)
    result.setflags(write=False)
    return result


def _check_ids(sample_ids: Sequence[str], n_samples: int) -> tuple[str, ...]:
    ids = tuple(str(sample_id) for sample_id in sample_ids)
    if len(ids) != n_samples:
        raise InvalidInputError(f"Expected {n_samples} sample ids, got {len(ids)}")
    if len(set(ids)) != len(ids):
        duplicate = next(sample_id for sample_id, count in Counter(ids).items() if count > 1)
        raise InvalidInputError(f"Sample ids must be unique, '{duplicate}' occurs more than once")
    return ids


def check_aligned(reference: Sequence[str], other: Sequence[str]) -> None:
    """Raise when two id lists differ in length, content or order.

    :param reference: The reference sample ids.
    :param other: The sample ids to compare.
    :raises AlignmentError: If the lists are not identical.
    """
    for left, right in zip(reference, other, strict=False):
        if left != right:
            raise AlignmentError("Sample ids are not aligned", sample_id=right)
    if len(reference) != len(other):
        longer = reference if len(reference) > len(other) else other
        raise AlignmentError(f"Sample id lists differ in length ({len(reference)} vs {len(other)})", sample_id=longer[min(len(reference), len(other))])


@dataclass(frozen=True)
class PredictionHistory:
    """Probability of the true label for every (run, epoch, sample) cell.

    :param values: Array of shape (R, T, N) with values in [0, 1].
    :param sample_ids: N unique sample ids, in the canonical sample order.
    :param config: The run configuration that produced the history, if known.
    """

    values: npt.NDArray[np.float64]
    sample_ids: tuple[str, ...]
    config: "RunConfig | None" = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Validate the tensor and freeze it."""
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 3:
            raise InvalidInputError(f"Prediction history must have shape (runs, epochs, samples), got {values.shape}")
        if 0 in values.shape:
            raise InvalidInputError(f"Prediction history is empty: runs={values.shape[0]}, epochs={values.shape[1]}, samples={values.shape[2]}")
        bad = ~((values >= 0.0) & (values <= 1.0))
        if bad.any():
            r, t, i = (int(index) for index in np.argwhere(bad)[0])
            raise InvalidInputError(f"Probability {values[r, t, i]!r} at (run={r}, epoch={t}, sample={i}) is outside [0, 1]")
        object.__setattr__(self, "values", _frozen(values, np.float64))
        object.__setattr__(self, "sample_ids", _check_ids(self.sample_ids, values.shape[2]))

    @property
    def n_runs(self) -> int:
        """Number of independently seeded runs R."""
        return int(self.values.shape[0])

    @property
    def n_epochs(self) -> int:
        """Number of recorded epochs T."""
        return int(self.values.shape[1])

    @property
    def n_samples(self) -> int:
        """Number of samples N."""
        return int(self.values.shape[2])

    def run(self, run: int) -> "PredictionHistory":
        """Return the single-run history of one run.

        :param run: The 0-based run index.
        :return: A history with R = 1.
        """
        if not 0 <= run < self.n_runs:
            raise InvalidInputError(f"Run index {run} out of range for {self.n_runs} runs")
        return PredictionHistory(self.values[run : run + 1], self.sample_ids, self.config)


@dataclass(frozen=True)
class LearnabilityVector:
    """Learnability score of every sample, aligned with ``sample_ids``.

    :param scores: N scores in [0, 1].
    :param sample_ids: N unique sample ids.
    :param provenance: The run configuration that produced the scores, if known.
    """

    scores: npt.NDArray[np.float64]
    sample_ids: tuple[str, ...]
    provenance: "RunConfig | None" = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Validate and freeze the scores."""
        scores = np.asarray(self.scores, dtype=np.float64)
        if scores.ndim != 1:
            raise InvalidInputError(f"Scores must be one-dimensional, got shape {scores.shape}")
        object.__setattr__(self, "scores", _frozen(scores, np.float64))
        object.__setattr__(self, "sample_ids", _check_ids(self.sample_ids, scores.shape[0]))

    def __len__(self) -> int:
        """Return the number of samples."""
        return int(self.scores.shape[0])

    def reindex(self, sample_ids: Sequence[str]) -> "LearnabilityVector":
        """Reorder the vector to follow another id order over the same samples.

        :param sample_ids: The target order.
        :return: The reordered vector.
        :raises AlignmentError: If the id sets differ.
        """
        position = {sample_id: index for index, sample_id in enumerate(self.sample_ids)}
        missing = next((sample_id for sample_id in sample_ids if sample_id not in position), None)
        if missing is not None:
            raise AlignmentError("Sample missing from learnability vector", sample_id=missing)
        if len(sample_ids) != len(self.sample_ids):
            target = set(sample_ids)
            raise AlignmentError("Learnability vector has extra samples", sample_id=next(s for s in self.sample_ids if s not in target))
        order = np.fromiter((position[sample_id] for sample_id in sample_ids), dtype=np.intp, count=len(sample_ids))
        return LearnabilityVector(self.scores[order], tuple(sample_ids), self.provenance)


@dataclass(frozen=True)
class RankVector:
    """Learnability rank of every sample; rank 1 is the easiest.

    :param ranks: N integers in [1, N].
    :param sample_ids: N unique sample ids.
    """

    ranks: npt.NDArray[np.int64]
    sample_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        """Validate and freeze the ranks."""
        ranks = np.asarray(self.ranks, dtype=np.int64)
        if ranks.ndim != 1:
            raise InvalidInputError(f"Ranks must be one-dimensional, got shape {ranks.shape}")
        if ranks.size and (ranks.min() < 1 or ranks.max() > ranks.size):
            raise InvalidInputError(f"Ranks must lie in [1, {ranks.size}]")
        object.__setattr__(self, "ranks", _frozen(ranks, np.int64))
        object.__setattr__(self, "sample_ids", _check_ids(self.sample_ids, ranks.shape[0]))

    def __len__(self) -> int:
        """Return the number of samples."""
        return int(self.ranks.shape[0])
