"""The lblab package: sample-wise learnability of training data."""

from .data import Dataset, load_csv, make_blobs, make_preset
from .metrics import (
    LearnabilityVector,
    PredictionHistory,
    RankVector,
    compute_learnability,
    compute_ranks,
    correlation_matrix,
    histogram2d,
    pearson,
    rank_correlation,
)
from .training import LearnabilityTrainer, ModelSpec, OptimizerSpec, RunConfig, TrainReport, train_and_record
from .transformation import AnalysisPipeline, analyze

__all__ = [
    "AnalysisPipeline",
    "Dataset",
    "LearnabilityTrainer",
    "LearnabilityVector",
    "ModelSpec",
    "OptimizerSpec",
    "PredictionHistory",
    "RankVector",
    "RunConfig",
    "TrainReport",
    "analyze",
    "compute_learnability",
    "compute_ranks",
    "correlation_matrix",
    "histogram2d",
    "load_csv",
    "make_blobs",
    "make_preset",
    "pearson",
    "rank_correlation",
    "train_and_record",
]
