"""Module containing datasets: the Dataset type, synthetic blobs and CSV input/output."""

from .csv_io import CsvSchema, load_csv, save_csv, synth_schema
from .dataset import Dataset, DifficultyTag
from .synth import PRESETS, make_blobs, make_preset, simplex_means

__all__ = [
    "PRESETS",
    "CsvSchema",
    "Dataset",
    "DifficultyTag",
    "load_csv",
    "make_blobs",
    "make_preset",
    "save_csv",
    "simplex_means",
    "synth_schema",
]
