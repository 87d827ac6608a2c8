"""Gaussian blob datasets with injected label noise, so that the hard samples are known in advance."""

import math
from typing import Any

import numpy as np
import numpy.typing as npt

from lblab.errors import InvalidInputError

from .dataset import Dataset, DifficultyTag

BOUNDARY_FACTOR = 1.5

PRESETS: dict[str, dict[str, Any]] = {
    "easy": {"classes": 2, "dim": 2, "per_class": 200, "spread": 0.2, "label_noise_fraction": 0.0, "seed": 0},
    "standard": {"classes": 4, "dim": 8, "per_class": 500, "spread": 0.6, "label_noise_fraction": 0.08, "seed": 7},
}


def simplex_means(classes: int, dim: int, separation: float) -> npt.NDArray[np.float64]:
    """Place class means on a regular simplex centred at the origin.

    The coordinates come from the Helmert basis of the sum-zero subspace, padded with zeros up to ``dim``.

    :param classes: Number of classes C.
    :param dim: Feature dimension, at least C - 1.
    :param separation: Distance between every pair of means.
    :return: Array of shape (C, dim).
    """
    if dim < classes - 1:
        raise InvalidInputError(f"{classes} equidistant class means need at least {classes - 1} dimensions, got {dim}")
    helmert = np.zeros((classes - 1, classes))
    for k in range(1, classes):
        helmert[k - 1, :k] = 1.0
        helmert[k - 1, k] = -k
        helmert[k - 1] /= math.sqrt(k * (k + 1))
    means = np.zeros((classes, dim))
    means[:, : classes - 1] = helmert.T * (separation / math.sqrt(2.0))
    return means


def make_blobs(
    classes: int,
    dim: int,
    per_class: int,
    spread: float,
    label_noise_fraction: float = 0.0,
    seed: int = 0,
    separation: float = 3.0,
) -> Dataset:
    """Generate isotropic Gaussian blobs around equidistant class means.

    ``round(label_noise_fraction * N)`` samples, chosen by the seeded generator, get a uniformly drawn wrong label and the
    tag ``noisy``. Other samples closer than ``1.5 * spread`` to the mean of another class are tagged ``boundary``, the
    rest ``clean``. Samples are ordered by true class.

    :param classes: Number of classes, at least 2.
    :param dim: Feature dimension, at least ``classes - 1``.
    :param per_class: Samples per class.
    :param spread: Standard deviation of every coordinate around the class mean.
    :param label_noise_fraction: Fraction of samples with a corrupted label, in [0, 1).
    :param seed: Non-negative seed.
    :param separation: Distance between every pair of class means.
    :return: The dataset with difficulty tags.
    """
    if classes < 2:
        raise InvalidInputError(f"Need at least 2 classes, got {classes}")
    if per_class < 1:
        raise InvalidInputError(f"Need at least 1 sample per class, got {per_class}")
    if not (math.isfinite(spread) and spread > 0):
        raise InvalidInputError(f"Spread must be positive, got {spread}")
    if not (math.isfinite(separation) and separation > 0):
        raise InvalidInputError(f"Separation must be positive, got {separation}")
    if not 0 <= label_noise_fraction < 1:
        raise InvalidInputError(f"Label noise fraction must lie in [0, 1), got {label_noise_fraction}")
    if seed < 0:
        raise InvalidInputError(f"Seeds must be non-negative, got {seed}")

    rng = np.random.default_rng(seed)
    means = simplex_means(classes, dim, separation)
    true_classes = np.repeat(np.arange(classes), per_class)
    features = means[true_classes] + spread * rng.standard_normal((true_classes.size, dim))

    n = true_classes.size
    n_noisy = math.floor(label_noise_fraction * n + 0.5)
    noisy = np.sort(rng.choice(n, size=n_noisy, replace=False)) if n_noisy else np.empty(0, dtype=np.int64)
    assigned = true_classes.copy()
    assigned[noisy] = (true_classes[noisy] + rng.integers(1, classes, size=n_noisy)) % classes

    distances = np.linalg.norm(features[:, None, :] - means[None, :, :], axis=2)
    distances[np.arange(n), assigned] = np.inf
    near_foreign = distances.min(axis=1) < BOUNDARY_FACTOR * spread

    tags = [DifficultyTag.BOUNDARY if foreign else DifficultyTag.CLEAN for foreign in near_foreign]
    for i in noisy:
        tags[i] = DifficultyTag.NOISY

    return Dataset(
        features=features,
        labels=assigned + 1,
        sample_ids=tuple(f"blob-{i:05d}" for i in range(n)),
        n_classes=classes,
        difficulty_tags=tuple(tags),
    )


def make_preset(name: str) -> Dataset:
    """Generate a named dataset: ``easy`` (separable 2-class blobs) or ``standard`` (4 noisy classes in 8 dimensions).

    :param name: The preset name.
    :return: The dataset.
    """
    if name not in PRESETS:
        raise InvalidInputError(f"Unknown dataset preset '{name}', expected one of {sorted(PRESETS)}")
    return make_blobs(**PRESETS[name])
