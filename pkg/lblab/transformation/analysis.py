"""Analysis blocks that turn a prediction history into learnability scores and ranks."""

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from lblab.data import Dataset, DifficultyTag
from lblab.errors import InvalidInputError
from lblab.metrics import LearnabilityVector, PredictionHistory, RankVector, check_aligned, compute_learnability, compute_ranks

from .transformation import TransformationPipeline
from .transformation_block import TransformationBlock


@dataclass(frozen=True)
class LearnabilityTable:
    """Learnability score and rank of every sample, in canonical sample order.

    :param vector: The learnability scores.
    :param ranks: The ranks of the scores.
    """

    vector: LearnabilityVector
    ranks: RankVector

    def __post_init__(self) -> None:
        """Check that scores and ranks describe the same samples."""
        check_aligned(self.vector.sample_ids, self.ranks.sample_ids)

    @property
    def sample_ids(self) -> tuple[str, ...]:
        """The sample ids."""
        return self.vector.sample_ids

    def __len__(self) -> int:
        """Return the number of samples."""
        return len(self.vector)

    def rank_order(self) -> npt.NDArray[np.intp]:
        """Sample indices from the easiest to the hardest; tied samples keep their canonical order."""
        return np.argsort(self.ranks.ranks, kind="stable")


class LearnabilityBlock(TransformationBlock):
    """Compute the learnability vector of a prediction history."""

    def custom_transform(self, data: PredictionHistory) -> LearnabilityVector:
        """Average the history over runs and epochs.

        :param data: The prediction history.
        :return: The learnability vector.
        """
        self.log_to_debug(f"Averaging {data.n_runs} runs x {data.n_epochs} epochs for {data.n_samples} samples")
        return compute_learnability(data)


class RankBlock(TransformationBlock):
    """Attach the learnability ranks to a learnability vector."""

    def custom_transform(self, data: LearnabilityVector) -> LearnabilityTable:
        """Rank the samples.

        :param data: The learnability vector.
        :return: The table of scores and ranks.
        """
        return LearnabilityTable(data, compute_ranks(data))


@dataclass
class AnalysisPipeline(TransformationPipeline):
    """Prediction history to learnability table: :class:`LearnabilityBlock` followed by :class:`RankBlock`."""

    steps: list[TransformationBlock] = field(default_factory=lambda: [LearnabilityBlock(), RankBlock()])  # type: ignore[assignment]
    title: str = "Learnability Analysis"


def analyze(history: PredictionHistory) -> LearnabilityTable:
    """Compute scores and ranks of a prediction history.

    :param history: The prediction history.
    :return: The learnability table.
    """
    return AnalysisPipeline().transform(history)


@dataclass(frozen=True)
class TagSummary:
    """Learnability statistics of the samples sharing a difficulty tag.

    :param count: Number of samples with the tag.
    :param mean_learnability: Mean score of those samples.
    :param worst_quartile_share: Fraction of those samples whose rank lies in the worst quarter, ``rank > 3N/4``.
    """

    count: int
    mean_learnability: float
    worst_quartile_share: float


def summarize_by_tag(table: LearnabilityTable, dataset: Dataset) -> dict[DifficultyTag, TagSummary]:
    """Summarize learnability per difficulty tag of a synthetic dataset.

    :param table: Scores and ranks, aligned with the dataset.
    :param dataset: The tagged dataset.
    :return: Summary of every tag that occurs.
    """
    if dataset.difficulty_tags is None:
        raise InvalidInputError("Dataset has no difficulty tags")
    check_aligned(dataset.sample_ids, table.sample_ids)
    tags = np.array([tag.value for tag in dataset.difficulty_tags])
    worst = table.ranks.ranks > 0.75 * len(table)
    summary = {}
    for tag in DifficultyTag:
        mask = tags == tag.value
        if mask.any():
            summary[tag] = TagSummary(int(mask.sum()), float(table.vector.scores[mask].mean()), float(worst[mask].mean()))
    return summary
