"""Reading and writing datasets as CSV files with a header row."""

import io
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from lblab.errors import ParseError
from lblab.utils import atomic_write

from .dataset import Dataset, DifficultyTag

ID_COLUMN = "sample_id"
LABEL_COLUMN = "label"
TAG_COLUMN = "tag"


@dataclass(frozen=True)
class CsvSchema:
    """Column layout of a dataset CSV file.

    :param feature_columns: Feature columns in order. None selects every column that is not the id, label or tag column.
    :param label_column: Column with 1-based integer labels.
    :param id_column: Column with unique sample ids. None synthesizes ``row-1``, ``row-2``, ...
    :param tag_column: Optional column with difficulty tags.
    :param n_classes: Number of classes. None takes the largest label.
    """

    feature_columns: tuple[str, ...] | None = None
    label_column: str = LABEL_COLUMN
    id_column: str | None = None
    tag_column: str | None = None
    n_classes: int | None = None


def _numeric_column(frame: pd.DataFrame, column: str) -> np.ndarray:
    try:
        values = frame[column].to_numpy(dtype=np.float64)
    except ValueError:
        values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise ParseError(f"Non-numeric value '{frame[column].iloc[bad[0]]}'", row=int(bad[0]) + 2, column=column)
    return values


def load_csv(path: str | os.PathLike[str], schema: CsvSchema | None = None) -> Dataset:
    """Load a dataset from a CSV file.

    Rows are reported by their line number in the file, the header being line 1.

    :param path: The file path.
    :param schema: The column layout.
    :return: The dataset.
    :raises ParseError: For empty files, missing columns, ragged rows and non-numeric cells.
    """
    schema = schema or CsvSchema()
    try:
        frame = pd.read_csv(path, dtype=str, na_filter=False, skipinitialspace=True)
    except FileNotFoundError as e:
        raise ParseError(f"Dataset file not found: {path}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"Dataset file {path} is not valid UTF-8: {e.reason} at byte {e.start}") from e
    except pd.errors.EmptyDataError as e:
        raise ParseError(f"Dataset file {path} is empty") from e
    except pd.errors.ParserError as e:
        raise ParseError(f"Ragged row in {path}: {e}") from e
    if frame.empty:
        raise ParseError(f"Dataset file {path} has a header but no rows")

    missing_cells = frame.isna().to_numpy()
    if missing_cells.any():
        row, col = np.argwhere(missing_cells)[0]
        raise ParseError("Ragged row, field missing", row=int(row) + 2, column=str(frame.columns[col]))

    reserved = {schema.label_column, schema.id_column, schema.tag_column} - {None}
    feature_columns = schema.feature_columns or tuple(str(column) for column in frame.columns if column not in reserved)
    for column in (*feature_columns, *sorted(reserved)):
        if column not in frame.columns:
            raise ParseError(f"Missing column '{column}' in {path}", column=column)
    if not feature_columns:
        raise ParseError(f"No feature columns in {path}")

    features = np.column_stack([_numeric_column(frame, column) for column in feature_columns])
    labels = _numeric_column(frame, schema.label_column)
    fractional = np.flatnonzero(labels != np.round(labels))
    if fractional.size:
        raise ParseError(f"Label '{frame[schema.label_column].iloc[fractional[0]]}' is not an integer", row=int(fractional[0]) + 2, column=schema.label_column)

    if schema.id_column is None:
        sample_ids = tuple(f"row-{k}" for k in range(1, len(frame) + 1))
    else:
        sample_ids = tuple(frame[schema.id_column])

    tags = None
    if schema.tag_column is not None:
        try:
            tags = tuple(DifficultyTag(tag) for tag in frame[schema.tag_column])
        except ValueError as e:
            raise ParseError(f"Invalid difficulty tag: {e}", column=schema.tag_column) from e

    labels = labels.astype(np.int64)
    return Dataset(
        features=features,
        labels=labels,
        sample_ids=sample_ids,
        n_classes=schema.n_classes if schema.n_classes is not None else int(labels.max()),
        difficulty_tags=tags,
    )


def save_csv(dataset: Dataset, path: str | os.PathLike[str]) -> None:
    """Write a dataset as ``sample_id, x0..x{D-1}, label[, tag]``.

    :param dataset: The dataset.
    :param path: The file path.
    """
    frame = pd.DataFrame(dataset.features, columns=[f"x{j}" for j in range(dataset.n_features)])
    frame.insert(0, ID_COLUMN, dataset.sample_ids)
    frame[LABEL_COLUMN] = dataset.labels
    if dataset.difficulty_tags is not None:
        frame[TAG_COLUMN] = [tag.value for tag in dataset.difficulty_tags]
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    atomic_write(path, buffer.getvalue())


def synth_schema(*, has_tags: bool = True) -> CsvSchema:
    """Return the schema of files written by :func:`save_csv`.

    :param has_tags: Whether the file carries a tag column.
    :return: The schema.
    """
    return CsvSchema(id_column=ID_COLUMN, tag_column=TAG_COLUMN if has_tags else None)
