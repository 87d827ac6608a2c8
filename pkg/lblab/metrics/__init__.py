"""Module containing the learnability, rank, correlation and histogram computations."""

from .correlation import CorrelationMode, correlation_matrix, pearson, rank_correlation
from .histogram import Histogram2D, histogram2d
from .history import LearnabilityVector, PredictionHistory, RankVector, check_aligned
from .learnability import compute_learnability, compute_ranks

__all__ = [
    "CorrelationMode",
    "Histogram2D",
    "LearnabilityVector",
    "PredictionHistory",
    "RankVector",
    "check_aligned",
    "compute_learnability",
    "compute_ranks",
    "correlation_matrix",
    "histogram2d",
    "pearson",
    "rank_correlation",
]
