"""Sample-wise learnability scores and their ranks."""

import numpy as np

from lblab.errors import InvalidInputError

from .history import LearnabilityVector, PredictionHistory, RankVector


def compute_learnability(history: PredictionHistory) -> LearnabilityVector:
    """Average the true-label probability of every sample over all runs and epochs.

    The score of sample i is ``(1/R) sum_r (1/T) sum_t values[r, t, i]``. The R*T cells of each sample are laid out
    contiguously before reducing so numpy sums them pairwise.

    :param history: The prediction history.
    :return: The learnability vector, aligned with ``history.sample_ids``.
    """
    cells = np.ascontiguousarray(history.values.reshape(history.n_runs * history.n_epochs, history.n_samples).T)
    scores = cells.sum(axis=1) / cells.shape[1]
    return LearnabilityVector(scores, history.sample_ids, history.config)


def compute_ranks(vector: LearnabilityVector) -> RankVector:
    """Rank samples by learnability, the easiest sample first.

    The rank of sample i is the number of samples j with ``scores[j] >= scores[i]`` (i included), so tied samples share
    the largest rank of their group. Evaluated by sorting, which gives the same counts as the pairwise definition.

    :param vector: The learnability scores.
    :return: The rank vector.
    :raises InvalidInputError: If the vector is empty or contains NaN.
    """
    scores = vector.scores
    if scores.size == 0:
        raise InvalidInputError("Cannot rank an empty learnability vector")
    if np.isnan(scores).any():
        raise InvalidInputError(f"Cannot rank NaN score of sample '{vector.sample_ids[int(np.flatnonzero(np.isnan(scores))[0])]}'")
    below = np.searchsorted(np.sort(scores, kind="stable"), scores, side="left")
    return RankVector(scores.size - below, vector.sample_ids)
