"""Module containing the MLP trainer that records sample-wise prediction histories."""

from .config import DEFAULT_LEARNING_RATES, THREADS_ENV, ModelSpec, OptimizerSpec, RunConfig, resolve_threads
from .learnability_trainer import LearnabilityTrainer, TrainReport, record_predictions, train_and_record
from .mlp import MLP, backward, cross_entropy, forward, init_model, softmax
from .optimizers import OptimizerState, optimizer_step
from .training_block import TrainingBlock

__all__ = [
    "DEFAULT_LEARNING_RATES",
    "MLP",
    "THREADS_ENV",
    "LearnabilityTrainer",
    "ModelSpec",
    "OptimizerSpec",
    "OptimizerState",
    "RunConfig",
    "TrainReport",
    "TrainingBlock",
    "backward",
    "cross_entropy",
    "forward",
    "init_model",
    "optimizer_step",
    "record_predictions",
    "resolve_threads",
    "softmax",
    "train_and_record",
]
