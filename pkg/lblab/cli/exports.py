"""CSV and text exports: learnability tables, 2D histograms and correlation reports."""

import io
import os
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import numpy.typing as npt
import pandas as pd

from lblab.errors import ParseError
from lblab.metrics import Histogram2D, LearnabilityVector, RankVector, compute_ranks
from lblab.transformation import LearnabilityTable
from lblab.utils import atomic_write

SCORE_COLUMNS = ("sample_id", "learnability", "rank")
HISTOGRAM_COLUMNS = ("x_bin_lo", "x_bin_hi", "y_bin_lo", "y_bin_hi", "count")


def _to_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_scores(path: str | os.PathLike[str], table: LearnabilityTable) -> Path:
    """Write ``sample_id,learnability,rank`` sorted by rank, the easiest sample first.

    Scores are written with ``repr`` so they read back bit-identical.

    :param path: The file path.
    :param table: The learnability table.
    :return: The file path.
    """
    order = table.rank_order()
    frame = pd.DataFrame(
        {
            "sample_id": [table.sample_ids[i] for i in order],
            "learnability": [repr(float(score)) for score in table.vector.scores[order]],
            "rank": table.ranks.ranks[order],
        },
    )
    return atomic_write(path, _to_csv(frame))


def read_scores(path: str | os.PathLike[str]) -> LearnabilityTable:
    """Read a file written by :func:`write_scores`, in file order.

    :param path: The file path.
    :return: The learnability table.
    :raises ParseError: If the file is missing, malformed or its ranks disagree with its scores.
    """
    try:
        frame = pd.read_csv(path, dtype={"sample_id": str}, keep_default_na=False, float_precision="round_trip")
    except FileNotFoundError as e:
        raise ParseError(f"Scores file not found: {path}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"Scores file {path} is not valid UTF-8: {e.reason} at byte {e.start}") from e
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise ParseError(f"Cannot parse scores file {path}: {e}") from e
    if tuple(frame.columns) != SCORE_COLUMNS:
        raise ParseError(f"Scores file {path} must have columns {','.join(SCORE_COLUMNS)}, got {','.join(map(str, frame.columns))}", row=1)
    if frame.empty:
        raise ParseError(f"Scores file {path} has no rows")
    for column in ("learnability", "rank"):
        values = pd.to_numeric(frame[column], errors="coerce")
        if values.isna().any():
            row = int(np.flatnonzero(values.isna().to_numpy())[0])
            raise ParseError(f"Non-numeric value '{frame[column].iloc[row]}'", row=row + 2, column=column)
    scores = pd.to_numeric(frame["learnability"]).to_numpy(dtype=np.float64)
    outside = np.flatnonzero(~((scores >= 0.0) & (scores <= 1.0)))
    if outside.size:
        raise ParseError(f"Learnability {scores[outside[0]]!r} is outside [0, 1]", row=int(outside[0]) + 2, column="learnability")

    vector = LearnabilityVector(frame["learnability"].to_numpy(dtype=np.float64), tuple(frame["sample_id"]))
    ranks = RankVector(frame["rank"].to_numpy(dtype=np.int64), vector.sample_ids)
    if not np.array_equal(ranks.ranks, compute_ranks(vector).ranks):
        raise ParseError(f"Rank column of {path} does not match its learnability column", column="rank")
    return LearnabilityTable(vector, ranks)


def write_histogram(path: str | os.PathLike[str], histogram: Histogram2D) -> Path:
    """Write one row per bin: ``x_bin_lo,x_bin_hi,y_bin_lo,y_bin_hi,count``.

    :param path: The file path.
    :param histogram: The histogram.
    :return: The file path.
    """
    bins_x, bins_y = histogram.counts.shape
    frame = pd.DataFrame(
        {
            "x_bin_lo": np.repeat(histogram.x_edges[:-1], bins_y),
            "x_bin_hi": np.repeat(histogram.x_edges[1:], bins_y),
            "y_bin_lo": np.tile(histogram.y_edges[:-1], bins_x),
            "y_bin_hi": np.tile(histogram.y_edges[1:], bins_x),
            "count": histogram.counts.ravel(),
        },
    )
    return atomic_write(path, _to_csv(frame))


def write_matrix(path: str | os.PathLike[str], names: Sequence[str], matrix: npt.NDArray[np.float64]) -> Path:
    """Write a labelled square matrix as CSV.

    :param path: The file path.
    :param names: Row and column labels.
    :param matrix: The matrix.
    :return: The file path.
    """
    frame = pd.DataFrame(matrix, index=list(names), columns=list(names))
    buffer = io.StringIO()
    frame.to_csv(buffer, index_label="name", lineterminator="\n")
    return atomic_write(path, buffer.getvalue())


def format_matrix(names: Sequence[str], matrix: npt.NDArray[np.float64], *, parenthesize: bool = False) -> str:
    """Format a full correlation matrix as a text table.

    :param names: Row and column labels.
    :param matrix: The matrix.
    :param parenthesize: Wrap every entry in parentheses, the notation of rank correlations.
    :return: The table.
    """
    template = "({:.4f})" if parenthesize else "{:.4f}"
    cells = [[template.format(value) for value in row] for row in matrix]
    return pd.DataFrame(cells, index=list(names), columns=list(names)).to_string()


def format_triangular(names: Sequence[str], score_matrix: npt.NDArray[np.float64], rank_matrix: npt.NDArray[np.float64]) -> str:
    """Format score correlations above the diagonal and rank correlations, parenthesized, below it.

    :param names: Row and column labels.
    :param score_matrix: Learnability correlation matrix.
    :param rank_matrix: Rank correlation matrix.
    :return: The table.
    """
    n = len(names)
    cells = [["-" if i == j else f"{score_matrix[i, j]:.4f}" if i < j else f"({rank_matrix[i, j]:.4f})" for j in range(n)] for i in range(n)]
    return pd.DataFrame(cells, index=list(names), columns=list(names)).to_string()
