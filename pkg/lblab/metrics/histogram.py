"""Two-dimensional histograms of paired learnability scores or ranks."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from lblab.errors import InvalidInputError


@dataclass(frozen=True)
class Histogram2D:
    """Counts of (x, y) pairs on a uniform grid.

    :param x_edges: Bx + 1 ascending bin edges along x.
    :param y_edges: By + 1 ascending bin edges along y.
    :param counts: Bx x By counts, ``counts[i, j]`` holds x-bin i and y-bin j.
    :param overflow: Number of pairs outside the binned range.
    """

    x_edges: npt.NDArray[np.float64]
    y_edges: npt.NDArray[np.float64]
    counts: npt.NDArray[np.int64]
    overflow: int = 0

    @property
    def total(self) -> int:
        """Number of binned pairs plus the overflow tally."""
        return int(self.counts.sum()) + self.overflow


def histogram2d(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    bins_x: int,
    bins_y: int,
    range_x: tuple[float, float],
    range_y: tuple[float, float],
) -> Histogram2D:
    """Bin paired values on a uniform grid.

    A value equal to the upper bound falls in the last bin. Pairs with a coordinate outside its range are not binned but
    counted in ``overflow``.

    :param x: X coordinates.
    :param y: Y coordinates, same length as ``x``.
    :param bins_x: Number of bins along x.
    :param bins_y: Number of bins along y.
    :param range_x: (lo, hi) along x.
    :param range_y: (lo, hi) along y.
    :return: The histogram.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidInputError(f"Histogram needs two vectors of equal length, got shapes {x.shape} and {y.shape}")
    if bins_x < 1 or bins_y < 1:
        raise InvalidInputError(f"Histogram needs at least one bin per axis, got {bins_x}x{bins_y}")
    for name, (lo, hi) in (("x", range_x), ("y", range_y)):
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise InvalidInputError(f"Invalid {name} range [{lo}, {hi}]")

    x_edges = np.linspace(range_x[0], range_x[1], bins_x + 1)
    y_edges = np.linspace(range_y[0], range_y[1], bins_y + 1)
    inside = (x >= range_x[0]) & (x <= range_x[1]) & (y >= range_y[0]) & (y <= range_y[1])
    counts, _, _ = np.histogram2d(x[inside], y[inside], bins=(x_edges, y_edges))
    return Histogram2D(x_edges, y_edges, counts.astype(np.int64), overflow=int(x.size - inside.sum()))
