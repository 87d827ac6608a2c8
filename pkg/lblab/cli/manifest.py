"""Experiment manifests: one dataset, an output directory and a named run configuration per ``[run NAME]`` section.

.. code-block:: ini

    [experiment]
    version = lbman/1
    output = histories

    [dataset]
    preset = standard

    [run small]
    hidden_layers = 16
    optimizer = sgd
    epochs = 50
    runs = 3
"""

import configparser
import os
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from lblab.data import PRESETS, CsvSchema, Dataset, load_csv, make_preset
from lblab.errors import InvalidInputError, ParseError
from lblab.training import DEFAULT_LEARNING_RATES, ModelSpec, OptimizerSpec, RunConfig

MANIFEST_VERSION = "lbman/1"
RUN_PREFIX = "run "

EXPERIMENT_KEYS = frozenset({"version", "output", "cache"})
DATASET_KEYS = frozenset({"preset", "path", "label_column", "id_column", "tag_column", "feature_columns", "n_classes"})
RUN_KEYS = frozenset(
    {
        "hidden_layers",
        "layers",
        "activation",
        "init",
        "optimizer",
        "learning_rate",
        "momentum",
        "beta1",
        "beta2",
        "rho",
        "epsilon",
        "epochs",
        "runs",
        "batch_size",
        "seed",
        "shuffle",
    },
)


@dataclass(frozen=True)
class DatasetRef:
    """Where the dataset of an experiment comes from: a named preset or a CSV file.

    :param preset: The preset name.
    :param path: The CSV file path.
    :param schema: The CSV column layout.
    """

    preset: str | None = None
    path: Path | None = None
    schema: CsvSchema | None = None

    def load(self) -> Dataset:
        """Generate or read the dataset."""
        if self.preset is not None:
            return make_preset(self.preset)
        if self.path is None:
            raise InvalidInputError("Dataset reference needs a preset or a path")
        return load_csv(self.path, self.schema)


@dataclass(frozen=True)
class ExperimentManifest:
    """A parsed manifest with the dataset loaded and every run configuration resolved.

    :param version: The manifest format version.
    :param output_dir: Directory for the history files.
    :param cache_dir: Directory for cached training reports, None disables caching.
    :param dataset_ref: Where the dataset comes from.
    :param dataset: The dataset shared by all runs.
    :param runs: Run configurations by unique name, in file order.
    """

    version: str
    output_dir: Path
    cache_dir: Path | None
    dataset_ref: DatasetRef
    dataset: Dataset
    runs: dict[str, RunConfig]


def _check_keys(section: configparser.SectionProxy, allowed: frozenset[str]) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise InvalidInputError(f"Unknown key '{unknown[0]}' in section [{section.name}], expected some of {sorted(allowed)}")


def _get(section: configparser.SectionProxy, key: str, convert: Callable[[str], Any]) -> Any:  # noqa: ANN401
    raw = section[key].strip()
    try:
        return convert(raw)
    except ValueError as e:
        raise InvalidInputError(f"Invalid value '{raw}' for '{key}' in section [{section.name}]") from e


def _int_list(raw: str) -> tuple[int, ...]:
    return tuple(int(part) for part in raw.replace(",", " ").split())


def _bool(raw: str) -> bool:
    value = configparser.ConfigParser.BOOLEAN_STATES.get(raw.lower())
    if value is None:
        raise ValueError(raw)
    return value


def _resolve(base: Path, raw: str) -> Path:
    path = Path(raw).expanduser()
    return path if path.is_absolute() else base / path


def _dataset_ref(section: configparser.SectionProxy, base: Path) -> DatasetRef:
    _check_keys(section, DATASET_KEYS)
    if ("preset" in section) == ("path" in section):
        raise InvalidInputError("Section [dataset] needs exactly one of 'preset' and 'path'")
    if "preset" in section:
        preset = section["preset"].strip()
        if preset not in PRESETS:
            raise InvalidInputError(f"Unknown dataset preset '{preset}', expected one of {sorted(PRESETS)}")
        if set(section) - {"preset"}:
            raise InvalidInputError("Column settings in [dataset] only apply to a 'path'")
        return DatasetRef(preset=preset)

    feature_columns = None
    if "feature_columns" in section:
        feature_columns = tuple(column.strip() for column in section["feature_columns"].split(",") if column.strip())
    schema = CsvSchema(
        feature_columns=feature_columns or None,
        label_column=section.get("label_column", "label").strip(),
        id_column=section.get("id_column", "").strip() or None,
        tag_column=section.get("tag_column", "").strip() or None,
        n_classes=_get(section, "n_classes", int) if "n_classes" in section else None,
    )
    return DatasetRef(path=_resolve(base, section["path"].strip()), schema=schema)


def _run_config(section: configparser.SectionProxy, dataset: Dataset) -> RunConfig:
    _check_keys(section, RUN_KEYS)
    if "layers" in section and "hidden_layers" in section:
        raise InvalidInputError(f"Section [{section.name}] sets both 'layers' and 'hidden_layers'")
    if "layers" in section:
        layer_sizes = _get(section, "layers", _int_list)
    else:
        hidden = _get(section, "hidden_layers", _int_list) if "hidden_layers" in section else ()
        layer_sizes = (dataset.n_features, *hidden, dataset.n_classes)

    kind = section.get("optimizer", "sgd").strip()
    if kind not in DEFAULT_LEARNING_RATES:
        raise InvalidInputError(f"Unknown optimizer '{kind}' in section [{section.name}]")
    optimizer_args: dict[str, Any] = {"kind": kind, "learning_rate": DEFAULT_LEARNING_RATES[kind]}
    for key in ("learning_rate", "momentum", "beta1", "beta2", "rho", "epsilon"):
        if key in section:
            optimizer_args[key] = _get(section, key, float)

    run_args: dict[str, Any] = {}
    for key in ("epochs", "runs", "batch_size"):
        if key in section:
            run_args[key] = _get(section, key, int)
    if "seed" in section:
        run_args["base_seed"] = _get(section, "seed", int)
    if "shuffle" in section:
        run_args["shuffle_each_epoch"] = _get(section, "shuffle", _bool)

    model = ModelSpec(
        layer_sizes,
        activation=section.get("activation", "relu").strip(),  # type: ignore[arg-type]
        init_scheme=section.get("init", "he").strip(),  # type: ignore[arg-type]
    )
    try:
        return RunConfig(model=model, optimizer=OptimizerSpec(**optimizer_args), **run_args)
    except InvalidInputError as e:
        raise InvalidInputError(f"Section [{section.name}]: {e}") from e


def parse_manifest(text: str, base_dir: str | os.PathLike[str] = ".") -> ExperimentManifest:
    """Parse manifest text and load its dataset.

    :param text: The manifest contents.
    :param base_dir: Directory that relative paths are resolved against.
    :return: The manifest.
    :raises ParseError: For syntax errors and a wrong version.
    :raises InvalidInputError: For duplicate run names, unknown keys and invalid values.
    """
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    try:
        parser.read_string(text)
    except configparser.DuplicateSectionError as e:
        raise InvalidInputError(f"Duplicate section [{e.section}] at line {e.lineno}, run names must be unique") from e
    except configparser.DuplicateOptionError as e:
        raise InvalidInputError(f"Duplicate key '{e.option}' in section [{e.section}]") from e
    except configparser.Error as e:
        raise ParseError(f"Invalid manifest: {e.message}", row=getattr(e, "lineno", None)) from e

    for required in ("experiment", "dataset"):
        if not parser.has_section(required):
            raise InvalidInputError(f"Manifest has no [{required}] section")
    unknown = [name for name in parser.sections() if name not in ("experiment", "dataset") and not name.startswith(RUN_PREFIX)]
    if unknown:
        raise InvalidInputError(f"Unknown section [{unknown[0]}]")

    experiment = parser["experiment"]
    _check_keys(experiment, EXPERIMENT_KEYS)
    version = experiment.get("version", "").strip()
    if version != MANIFEST_VERSION:
        raise ParseError(f"Unsupported manifest version '{version}', expected '{MANIFEST_VERSION}'")
    if "output" not in experiment:
        raise InvalidInputError("Section [experiment] needs an 'output' directory")

    names = [name.removeprefix(RUN_PREFIX).strip() for name in parser.sections() if name.startswith(RUN_PREFIX)]
    if not names:
        raise InvalidInputError("Manifest defines no [run NAME] sections")
    if len(set(names)) != len(names):
        raise InvalidInputError(f"Run name '{next(name for name in names if names.count(name) > 1)}' is used more than once")
    if any(not name for name in names):
        raise InvalidInputError("Run sections need a name: [run NAME]")
    unsafe = next((name for name in names if name in (".", "..") or any(sep in name for sep in ("/", "\\"))), None)
    if unsafe is not None:
        raise InvalidInputError(f"Run name '{unsafe}' is not a valid file name")

    base = Path(base_dir)
    dataset_ref = _dataset_ref(parser["dataset"], base)
    dataset = dataset_ref.load()
    runs = {name.removeprefix(RUN_PREFIX).strip(): _run_config(parser[name], dataset) for name in parser.sections() if name.startswith(RUN_PREFIX)}
    return ExperimentManifest(
        version=version,
        output_dir=_resolve(base, experiment["output"].strip()),
        cache_dir=_resolve(base, experiment["cache"].strip()) if experiment.get("cache", "").strip() else None,
        dataset_ref=dataset_ref,
        dataset=dataset,
        runs=runs,
    )


def load_manifest(path: str | os.PathLike[str]) -> ExperimentManifest:
    """Read a manifest file; relative paths inside it are resolved against its directory.

    :param path: The manifest path.
    :return: The manifest.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ParseError(f"Manifest not found: {path}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"Manifest {path} is not valid UTF-8: {e.reason} at byte {e.start}") from e
    return parse_manifest(text, path.parent)
