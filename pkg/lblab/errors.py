"""Exceptions raised by lblab. Every error carries the exit code the command line reports for it."""

from typing import ClassVar


class LblabError(Exception):
    """Base class for all lblab errors."""

    exit_code: ClassVar[int] = 1


class InvalidInputError(LblabError, ValueError):
    """Raised for empty, ill-shaped or out-of-range inputs and for invalid configuration."""

    exit_code: ClassVar[int] = 2


class ParseError(LblabError, ValueError):
    """Raised when a file cannot be parsed.

    :param message: The error message.
    :param row: The 1-based line number of the offending row, if known.
    :param column: The name of the offending column, if known.
    """

    exit_code: ClassVar[int] = 3

    def __init__(self, message: str, *, row: int | None = None, column: str | None = None) -> None:
        """Attach the location to the message."""
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        super().__init__(f"{message} ({', '.join(location)})" if location else message)
        self.row = row
        self.column = column


class AlignmentError(LblabError, ValueError):
    """Raised when two vectors or files do not list the same samples in the same order.

    :param message: The error message.
    :param sample_id: The first mismatched sample id.
    """

    exit_code: ClassVar[int] = 4

    def __init__(self, message: str, *, sample_id: str | None = None) -> None:
        """Attach the first mismatched id to the message."""
        super().__init__(f"{message}: first mismatched sample id '{sample_id}'" if sample_id is not None else message)
        self.sample_id = sample_id


class DegenerateInputError(LblabError, ValueError):
    """Raised when a statistic is undefined for its input, such as the correlation of a constant vector."""

    exit_code: ClassVar[int] = 4
