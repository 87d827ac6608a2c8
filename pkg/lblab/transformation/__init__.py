"""Module containing transformation blocks and the learnability analysis pipeline."""

from .analysis import AnalysisPipeline, LearnabilityBlock, LearnabilityTable, RankBlock, TagSummary, analyze, summarize_by_tag
from .transformation import TransformationPipeline
from .transformation_block import TransformationBlock

__all__ = [
    "AnalysisPipeline",
    "LearnabilityBlock",
    "LearnabilityTable",
    "RankBlock",
    "TagSummary",
    "TransformationBlock",
    "TransformationPipeline",
    "analyze",
    "summarize_by_tag",
]
