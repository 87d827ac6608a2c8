"""Logger mixin shared by the trainers, analysis blocks and commands."""

import logging
import os
from dataclasses import dataclass

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def configure_logging(level: str | int | None = None) -> None:
    """Install a single stream handler on the root logger.

    :param level: Log level name or number. Falls back to ``LBLAB_LOG_LEVEL`` and then INFO.
    """
    if level is None:
        level = os.environ.get("LBLAB_LOG_LEVEL", "INFO")
    if isinstance(level, str):
        level = level.upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


@dataclass
class Logger:
    """Logger mixin, logs through ``logging.getLogger(<class name>)``.

    Methods
    -------
    .. code-block:: python
        def log_to_terminal(self, message: str) -> None: # Logs on info level
        def log_to_debug(self, message: str) -> None: # Logs on debug level
        def log_to_warning(self, message: str) -> None: # Logs on warning level
        def log_section_separator(self, message: str) -> None: # Logs a section separator
    """

    def __post_init__(self) -> None:
        """Initialize the logger."""
        self.logger = logging.getLogger(self.__class__.__name__)

    def log_to_terminal(self, message: str) -> None:
        """Log a message on info level.

        :param message: The message to log
        """
        logging.getLogger(self.__class__.__name__).info(message)

    def log_to_debug(self, message: str) -> None:
        """Log a message on debug level.

        :param message: The message to log
        """
        logging.getLogger(self.__class__.__name__).debug(message)

    def log_to_warning(self, message: str) -> None:
        """Log a message on warning level.

        :param message: The message to log
        """
        logging.getLogger(self.__class__.__name__).warning(message)

    def log_section_separator(self, message: str, width: int = 80) -> None:
        """Log a centered section title between two separator lines.

        :param message: Title of the section
        :param width: Width of the separator when the terminal size is unknown
        """
        try:
            width = os.get_terminal_size().columns
        except OSError:
            pass
        separator = "=" * width
        logging.getLogger(self.__class__.__name__).info("%s\n%s\n%s", separator, message.center(width), separator)
