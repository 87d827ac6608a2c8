"""Pearson correlation of learnability scores and ranks across models."""

from collections.abc import Sequence
from typing import Literal

import numpy as np
import numpy.typing as npt

from lblab.errors import DegenerateInputError, InvalidInputError

from .history import LearnabilityVector, check_aligned
from .learnability import compute_ranks

CorrelationMode = Literal["score", "rank"]


def pearson(x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    """Compute the Pearson product-moment correlation coefficient.

    :param x: First vector.
    :param y: Second vector of the same length.
    :return: The coefficient in [-1, 1].
    :raises InvalidInputError: If the lengths differ or are below 2.
    :raises DegenerateInputError: If either vector is constant.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise InvalidInputError("Pearson correlation needs one-dimensional vectors")
    if x.size != y.size:
        raise InvalidInputError(f"Vector lengths differ ({x.size} vs {y.size})")
    if x.size < 2:
        raise InvalidInputError("Pearson correlation needs at least 2 values")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise InvalidInputError("Pearson correlation needs finite values")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise DegenerateInputError("Pearson correlation is undefined for a constant vector")

    # unit max-abs scaling keeps the mean and the sums of squares finite
    x = x / np.abs(x).max()
    y = y / np.abs(y).max()
    dx = x - x.mean()
    dy = y - y.mean()
    r = float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    if not np.isfinite(r):
        raise DegenerateInputError("Pearson correlation is not finite for these vectors")
    return min(1.0, max(-1.0, r))


def rank_correlation(a: LearnabilityVector, b: LearnabilityVector) -> float:
    """Pearson correlation of the rank vectors of two aligned learnability vectors.

    :param a: First learnability vector.
    :param b: Second learnability vector, aligned with ``a``.
    :return: The rank correlation.
    :raises AlignmentError: If the sample ids differ.
    """
    check_aligned(a.sample_ids, b.sample_ids)
    return pearson(compute_ranks(a).ranks.astype(np.float64), compute_ranks(b).ranks.astype(np.float64))


def correlation_matrix(vectors: Sequence[LearnabilityVector], mode: CorrelationMode = "score") -> npt.NDArray[np.float64]:
    """Compute the pairwise correlation matrix of several learnability vectors.

    :param vectors: At least two vectors aligned on their sample ids.
    :param mode: ``"score"`` correlates the scores, ``"rank"`` the rank vectors.
    :return: Symmetric matrix with a unit diagonal.
    """
    if len(vectors) < 2:
        raise InvalidInputError(f"A correlation matrix needs at least 2 vectors, got {len(vectors)}")
    if mode not in ("score", "rank"):
        raise InvalidInputError(f"Unknown correlation mode '{mode}', expected 'score' or 'rank'")
    for vector in vectors[1:]:
        check_aligned(vectors[0].sample_ids, vector.sample_ids)

    if mode == "score":
        columns = [vector.scores for vector in vectors]
    else:
        columns = [compute_ranks(vector).ranks.astype(np.float64) for vector in vectors]

    matrix = np.eye(len(vectors), dtype=np.float64)
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            matrix[i, j] = matrix[j, i] = pearson(columns[i], columns[j])
    return matrix
