"""The ``lblog/1`` prediction history file format.

Line 1 is a JSON header: ``format``, ``n_runs``, ``n_epochs``, ``n_samples``, ``sample_ids``, ``config`` (the run
configuration or null) and ``created``. Every following line is one JSON record ``{"run": r, "epoch": t, "p": [...]}``
holding the N true-label probabilities after epoch t (1-based) of run r (0-based), in the header's sample order.
Any framework that can write these lines can feed its training runs into ``lblab analyze``.
"""

import json
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from lblab.errors import InvalidInputError, ParseError
from lblab.metrics import PredictionHistory
from lblab.training import RunConfig
from lblab.utils import atomic_write

FORMAT_VERSION = "lblog/1"


def dumps_history(history: PredictionHistory, created: str | None = None) -> str:
    """Serialize a history.

    :param history: The history.
    :param created: Creation timestamp for the header, now (UTC) if None.
    :return: The file contents.
    """
    header = {
        "format": FORMAT_VERSION,
        "n_runs": history.n_runs,
        "n_epochs": history.n_epochs,
        "n_samples": history.n_samples,
        "sample_ids": list(history.sample_ids),
        "config": history.config.to_dict() if history.config is not None else None,
        "created": created or datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    lines = [json.dumps(header)]
    for run in range(history.n_runs):
        for epoch in range(history.n_epochs):
            lines.append(json.dumps({"run": run, "epoch": epoch + 1, "p": history.values[run, epoch].tolist()}))
    return "\n".join(lines) + "\n"


def write_history(path: str | os.PathLike[str], history: PredictionHistory, created: str | None = None) -> Path:
    """Write a history file atomically.

    :param path: The file path.
    :param history: The history.
    :param created: Creation timestamp, now if None.
    :return: The file path.
    """
    return atomic_write(path, dumps_history(history, created))


def _record(line: str, line_no: int) -> dict[str, Any]:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e.msg}", row=line_no) from e
    if not isinstance(record, dict):
        raise ParseError("Expected a JSON object", row=line_no)
    return record


def _count(header: dict[str, Any], key: str) -> int:
    value = header.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"Header field '{key}' must be a positive integer, got {value!r}", row=1)
    return value


def loads_history(text: str) -> PredictionHistory:
    """Parse the contents of a history file.

    :param text: The file contents.
    :return: The history.
    :raises ParseError: For malformed, incomplete or version-mismatched contents.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("History file is empty")
    header = _record(lines[0], 1)
    if header.get("format") != FORMAT_VERSION:
        raise ParseError(f"Unsupported history format {header.get('format')!r}, expected '{FORMAT_VERSION}'", row=1)
    n_runs, n_epochs, n_samples = (_count(header, key) for key in ("n_runs", "n_epochs", "n_samples"))
    sample_ids = header.get("sample_ids")
    if not isinstance(sample_ids, list) or len(sample_ids) != n_samples:
        raise ParseError(f"Header must list {n_samples} sample ids", row=1)

    values = np.empty((n_runs, n_epochs, n_samples), dtype=np.float64)
    seen = np.zeros((n_runs, n_epochs), dtype=bool)
    for line_no, line in enumerate(lines[1:], start=2):
        record = _record(line, line_no)
        run, epoch, probabilities = record.get("run"), record.get("epoch"), record.get("p")
        if not isinstance(run, int) or not 0 <= run < n_runs:
            raise ParseError(f"Run {run!r} outside 0..{n_runs - 1}", row=line_no)
        if not isinstance(epoch, int) or not 1 <= epoch <= n_epochs:
            raise ParseError(f"Epoch {epoch!r} outside 1..{n_epochs}", row=line_no)
        if seen[run, epoch - 1]:
            raise ParseError(f"Duplicate record for run {run} epoch {epoch}", row=line_no)
        if not isinstance(probabilities, list) or len(probabilities) != n_samples:
            raise ParseError(f"Record must hold {n_samples} probabilities", row=line_no)
        try:
            values[run, epoch - 1] = np.array(probabilities, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise ParseError(f"Non-numeric probability: {e}", row=line_no) from e
        seen[run, epoch - 1] = True

    if not seen.all():
        run, epoch = (int(index) for index in np.argwhere(~seen)[0])
        raise ParseError(f"Missing record for run {run} epoch {epoch + 1}")

    try:
        config = RunConfig.from_dict(header["config"]) if header.get("config") is not None else None
        return PredictionHistory(values, tuple(sample_ids), config)
    except InvalidInputError as e:
        raise ParseError(f"Invalid history: {e}") from e


def read_history(path: str | os.PathLike[str]) -> PredictionHistory:
    """Read a history file.

    :param path: The file path.
    :return: The history.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ParseError(f"History file not found: {path}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"History file {path} is not valid UTF-8: {e.reason} at byte {e.start}") from e
    return loads_history(text)


def history_payload(text: str) -> str:
    """Return the file contents without the creation timestamp, for comparing reruns.

    :param text: The file contents.
    :return: The contents with ``created`` removed from the header.
    """
    header, _, records = text.partition("\n")
    fields = json.loads(header)
    fields.pop("created", None)
    return json.dumps(fields) + "\n" + records
