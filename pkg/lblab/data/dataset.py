"""Dataset of feature vectors with 1-based integer labels and stable sample ids."""

from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from lblab.errors import InvalidInputError


class DifficultyTag(str, Enum):
    """Ground-truth difficulty of a synthetic sample."""

    CLEAN = "clean"
    NOISY = "noisy"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class Dataset:
    """Classification dataset.

    :param features: Array of shape (N, D).
    :param labels: N labels in {1, ..., n_classes}.
    :param sample_ids: N unique ids.
    :param n_classes: Number of classes L.
    :param difficulty_tags: Optional per-sample tag of synthetic data.
    """

    features: npt.NDArray[np.float64]
    labels: npt.NDArray[np.int64]
    sample_ids: tuple[str, ...]
    n_classes: int
    difficulty_tags: tuple[DifficultyTag, ...] | None = None

    def __post_init__(self) -> None:
        """Validate the dataset and freeze its arrays."""
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise InvalidInputError(f"Features must have shape (samples, dims), got {features.shape}")
        if features.shape[0] == 0 or features.shape[1] == 0:
            raise InvalidInputError(f"Dataset is empty, features have shape {features.shape}")
        if not np.isfinite(features).all():
            raise InvalidInputError("Features must be finite")
        n = features.shape[0]
        ids = tuple(str(sample_id) for sample_id in self.sample_ids)
        if labels.shape != (n,) or len(ids) != n:
            raise InvalidInputError(f"Row counts disagree: {n} feature rows, {labels.size} labels, {len(ids)} ids")
        duplicates = [sample_id for sample_id, count in Counter(ids).items() if count > 1]
        if duplicates:
            raise InvalidInputError(f"Sample ids must be unique, '{duplicates[0]}' occurs more than once")
        if self.n_classes < 1:
            raise InvalidInputError(f"Number of classes must be positive, got {self.n_classes}")
        bad = np.flatnonzero((labels < 1) | (labels > self.n_classes))
        if bad.size:
            raise InvalidInputError(f"Label {labels[bad[0]]} of sample '{ids[bad[0]]}' is outside 1..{self.n_classes}")
        tags = None
        if self.difficulty_tags is not None:
            tags = tuple(DifficultyTag(tag) for tag in self.difficulty_tags)
            if len(tags) != n:
                raise InvalidInputError(f"Expected {n} difficulty tags, got {len(tags)}")

        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "sample_ids", ids)
        object.__setattr__(self, "difficulty_tags", tags)

    def __len__(self) -> int:
        """Return the number of samples."""
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        """Number of feature columns D."""
        return int(self.features.shape[1])

    @property
    def class_indices(self) -> npt.NDArray[np.int64]:
        """0-based class of every sample."""
        return self.labels - 1
