"""Module containing the command line: manifests, the history file format, CSV exports and the commands."""

from .commands import Commands, scores_path, unique_names
from .exports import format_matrix, format_triangular, read_scores, write_histogram, write_matrix, write_scores
from .history_io import FORMAT_VERSION, dumps_history, history_payload, loads_history, read_history, write_history
from .main import build_parser, main
from .manifest import MANIFEST_VERSION, DatasetRef, ExperimentManifest, load_manifest, parse_manifest

__all__ = [
    "FORMAT_VERSION",
    "MANIFEST_VERSION",
    "Commands",
    "DatasetRef",
    "ExperimentManifest",
    "build_parser",
    "dumps_history",
    "format_matrix",
    "format_triangular",
    "history_payload",
    "load_manifest",
    "loads_history",
    "main",
    "parse_manifest",
    "read_history",
    "read_scores",
    "scores_path",
    "unique_names",
    "write_histogram",
    "write_history",
    "write_matrix",
    "write_scores",
]
