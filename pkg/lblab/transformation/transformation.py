"""TransformationPipeline that extends from TransformingSystem and Logger."""

from dataclasses import dataclass
from typing import Any

from agogos.transforming import TransformingSystem

from lblab.logging import Logger


@dataclass
class TransformationPipeline(TransformingSystem, Logger):
    """Sequential pipeline of transformation blocks.

    :param steps: The steps, each receiving the output of the previous one.
    :param title: The title logged when the pipeline runs.
    """

    title: str = "Transformation Pipeline"

    def transform(self, data: Any, **transform_args: Any) -> Any:  # noqa: ANN401
        """Run every step on the data.

        :param data: The input data.
        :param transform_args: Keyword arguments per step, keyed by the step class name.
        :return: The transformed data.
        """
        steps = self.get_steps()
        if steps:
            self.log_section_separator(self.title)
        step_args = {step.__class__.__name__: {} for step in steps} | transform_args
        return super().transform(data, **step_args)
