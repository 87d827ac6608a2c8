"""The commands behind the ``lblab`` verbs."""

import itertools
import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, TextIO

import numpy as np
import pandas as pd

from lblab.caching import CacheArgs
from lblab.data import Dataset, DifficultyTag, load_csv, make_blobs, make_preset, save_csv, synth_schema
from lblab.errors import AlignmentError, InvalidInputError
from lblab.logging import Logger
from lblab.metrics import compute_ranks, correlation_matrix, histogram2d
from lblab.training import LearnabilityTrainer, ModelSpec, OptimizerSpec, RunConfig, TrainReport
from lblab.transformation import AnalysisPipeline, LearnabilityTable, summarize_by_tag
from lblab.utils import atomic_write

from .exports import format_matrix, format_triangular, read_scores, write_histogram, write_matrix, write_scores
from .history_io import read_history, write_history
from .manifest import load_manifest

CompareMode = Literal["score", "rank", "both"]

HISTORY_SUFFIX = ".lblog"
SCORES_SUFFIX = ".scores.csv"


def unique_names(names: Sequence[str]) -> list[str]:
    """Make labels unique by suffixing repeats with ``-2``, ``-3``, ...

    :param names: The labels.
    :return: Unique labels in the same order.
    """
    seen: dict[str, int] = {}
    result = []
    for name in names:
        seen[name] = seen.get(name, 0) + 1
        result.append(name if seen[name] == 1 else f"{name}-{seen[name]}")
    return result


def scores_path(history_path: str | os.PathLike[str]) -> Path:
    """Return the default scores file next to a history file: ``run.lblog`` becomes ``run.scores.csv``."""
    path = Path(history_path)
    stem = path.name.removesuffix(HISTORY_SUFFIX) if path.name.endswith(HISTORY_SUFFIX) else path.stem
    return path.with_name(stem + SCORES_SUFFIX)


@dataclass
class Commands(Logger):
    """Runs the command-line verbs, printing tables to ``out`` and logging progress.

    :param out: Stream for tables and reports.
    :param n_jobs: Runs trained in parallel. None reads ``LBLAB_THREADS``.
    :param show_progress: Show progress bars during training.
    """

    out: TextIO = field(default_factory=lambda: sys.stdout)
    n_jobs: int | None = None
    show_progress: bool = True

    def _print(self, text: str) -> None:
        self.out.write(text.rstrip("\n") + "\n")

    def _train(self, dataset: Dataset, config: RunConfig, cache_args: CacheArgs | None = None) -> TrainReport:
        trainer = LearnabilityTrainer(config, n_jobs=self.n_jobs, show_progress=self.show_progress)
        return trainer.train_and_record(dataset, cache_args=cache_args)

    def cmd_train(self, manifest_path: str | os.PathLike[str]) -> dict[str, Path]:
        """Train every run of a manifest and write one history file per run.

        :param manifest_path: The manifest file.
        :return: History file of every run, by run name.
        """
        manifest = load_manifest(manifest_path)
        manifest.output_dir.mkdir(parents=True, exist_ok=True)
        cache_args: CacheArgs | None = None
        if manifest.cache_dir is not None:
            cache_args = {"storage_type": ".pkl", "storage_path": str(manifest.cache_dir)}
        self.log_to_terminal(f"Training {len(manifest.runs)} runs on {len(manifest.dataset)} samples")

        paths: dict[str, Path] = {}
        rows = []
        for name, config in manifest.runs.items():
            report = self._train(manifest.dataset, config, cache_args)
            paths[name] = write_history(manifest.output_dir / f"{name}{HISTORY_SUFFIX}", report.history)
            rows.append(
                {
                    "run": name,
                    "layers": "-".join(map(str, config.model.layer_sizes)),
                    "optimizer": config.optimizer.kind,
                    "lr": config.optimizer.learning_rate,
                    "epochs": config.epochs,
                    "runs": config.runs,
                    "final_accuracy": float(report.final_train_accuracy.mean()),
                    "final_loss": float(report.loss_curves[:, -1].mean()),
                    "history": str(paths[name]),
                },
            )
        self._print(pd.DataFrame(rows).to_string(index=False, float_format=lambda value: f"{value:.4g}"))
        return paths

    def cmd_analyze(
        self,
        history_path: str | os.PathLike[str],
        out: str | os.PathLike[str] | None = None,
        show: int = 0,
        dataset_path: str | os.PathLike[str] | None = None,
    ) -> Path:
        """Compute learnability scores and ranks of a history file and write them sorted from easy to hard.

        :param history_path: The history file.
        :param out: The scores file, next to the history file if None.
        :param show: Print the ``show`` easiest and hardest samples.
        :param dataset_path: A dataset written by ``synth``, adds difficulty tags to the listing and a per-tag summary.
        :return: The scores file.
        """
        if show < 0:
            raise InvalidInputError(f"--show must be non-negative, got {show}")
        history = read_history(history_path)
        table = AnalysisPipeline().transform(history)
        path = write_scores(out if out is not None else scores_path(history_path), table)
        self.log_to_terminal(f"Wrote learnability of {len(table)} samples to {path}")

        dataset = load_csv(dataset_path, synth_schema()) if dataset_path is not None else None
        if show:
            self._print(self._listing(table, show, dataset))
        if dataset is not None:
            self._print(self._tag_summary(table, dataset))
        return path

    def _listing(self, table: LearnabilityTable, k: int, dataset: Dataset | None) -> str:
        order = table.rank_order()
        frame = pd.DataFrame(
            {
                "rank": table.ranks.ranks[order],
                "sample_id": [table.sample_ids[i] for i in order],
                "learnability": table.vector.scores[order],
            },
        )
        if dataset is not None and dataset.difficulty_tags is not None:
            tags = dict(zip(dataset.sample_ids, dataset.difficulty_tags, strict=True))
            missing = next((sample_id for sample_id in frame["sample_id"] if sample_id not in tags), None)
            if missing is not None:
                raise AlignmentError("Sample missing from dataset", sample_id=missing)
            frame["tag"] = [tags[sample_id].value for sample_id in frame["sample_id"]]
        k = min(k, len(frame))
        formatter = {"learnability": lambda value: f"{value:.4f}"}
        return "\n".join(
            [
                f"Easiest {k} samples:",
                frame.head(k).to_string(index=False, formatters=formatter),
                f"Hardest {k} samples:",
                frame.tail(k).iloc[::-1].to_string(index=False, formatters=formatter),
            ],
        )

    def _tag_summary(self, table: LearnabilityTable, dataset: Dataset) -> str:
        position = {sample_id: index for index, sample_id in enumerate(dataset.sample_ids)}
        missing = next((sample_id for sample_id in table.sample_ids if sample_id not in position), None)
        if missing is not None or len(position) != len(table):
            raise AlignmentError("Dataset and history list different samples", sample_id=missing)
        order = [position[sample_id] for sample_id in table.sample_ids]
        aligned = Dataset(
            features=dataset.features[order],
            labels=dataset.labels[order],
            sample_ids=table.sample_ids,
            n_classes=dataset.n_classes,
            difficulty_tags=tuple(dataset.difficulty_tags[i] for i in order) if dataset.difficulty_tags else None,
        )
        summary = summarize_by_tag(table, aligned)
        frame = pd.DataFrame(
            [(tag.value, s.count, s.mean_learnability, s.worst_quartile_share) for tag, s in summary.items()],
            columns=["tag", "count", "mean_learnability", "worst_quartile_share"],
        )
        return "Learnability by difficulty tag:\n" + frame.to_string(index=False, float_format=lambda value: f"{value:.4f}")

    def cmd_compare(
        self,
        paths: Sequence[str | os.PathLike[str]],
        mode: CompareMode = "both",
        bins_score: int = 200,
        bins_rank: int = 100,
        out: str | os.PathLike[str] = ".",
    ) -> str:
        """Correlate two or more scores files and write pairwise histograms.

        Files are aligned on the sample order of the first one.

        :param paths: Scores files written by :meth:`cmd_analyze`.
        :param mode: Correlate scores, ranks or both.
        :param bins_score: Bins per axis of the score histograms over [0, 1].
        :param bins_rank: Bins per axis of the rank histograms over [1, N].
        :param out: Directory for the matrices, histograms and report.
        :return: The report.
        """
        if len(paths) < 2:
            raise InvalidInputError(f"compare needs at least 2 scores files, got {len(paths)}")
        tables = [read_scores(path) for path in paths]
        names = unique_names([Path(path).name.removesuffix(SCORES_SUFFIX).removesuffix(".csv") for path in paths])
        return self._correlate(names, tables, mode, bins_score, bins_rank, Path(out))

    def _correlate(
        self,
        names: Sequence[str],
        tables: Sequence[LearnabilityTable],
        mode: CompareMode,
        bins_score: int,
        bins_rank: int,
        out_dir: Path,
    ) -> str:
        if mode not in ("score", "rank", "both"):
            raise InvalidInputError(f"Unknown compare mode '{mode}', expected score, rank or both")
        reference = tables[0].sample_ids
        vectors = [table.vector.reindex(reference) for table in tables]
        out_dir.mkdir(parents=True, exist_ok=True)
        n = len(reference)

        sections = [f"Correlation across {len(names)} models on {n} samples"]
        matrices = {}
        for kind in ("score", "rank"):
            if mode not in (kind, "both"):
                continue
            matrices[kind] = correlation_matrix(vectors, mode=kind)
            write_matrix(out_dir / f"correlation_{kind}.csv", names, matrices[kind])
            title = "Learnability correlation:" if kind == "score" else "Learnability rank correlation:"
            sections.append(title + "\n" + format_matrix(names, matrices[kind], parenthesize=kind == "rank"))
        if mode == "both":
            sections.append("Learnability (upper) and rank (lower, parenthesized) correlation:\n" + format_triangular(names, matrices["score"], matrices["rank"]))

        overflow = []
        ranks = [compute_ranks(vector).ranks.astype(np.float64) for vector in vectors]
        for i, j in itertools.combinations(range(len(names)), 2):
            pair = f"{names[i]}__{names[j]}"
            if "score" in matrices:
                histogram = histogram2d(vectors[i].scores, vectors[j].scores, bins_score, bins_score, (0.0, 1.0), (0.0, 1.0))
                write_histogram(out_dir / f"hist_score_{pair}.csv", histogram)
                overflow.append(f"  score {names[i]} vs {names[j]}: {histogram.overflow} of {histogram.total} pairs outside the bins")
            if "rank" in matrices:
                histogram = histogram2d(ranks[i], ranks[j], bins_rank, bins_rank, (1.0, float(n)), (1.0, float(n)))
                write_histogram(out_dir / f"hist_rank_{pair}.csv", histogram)
                overflow.append(f"  rank {names[i]} vs {names[j]}: {histogram.overflow} of {histogram.total} pairs outside the bins")
        sections.append("Histogram overflow:\n" + "\n".join(overflow))

        report = "\n\n".join(sections) + "\n"
        atomic_write(out_dir / "report.txt", report)
        self._print(report)
        self.log_to_terminal(f"Wrote correlation matrices and histograms to {out_dir}")
        return report

    def _cross_models(self, dataset: Dataset, configs: dict[str, RunConfig], out: str | os.PathLike[str]) -> str:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        tables = []
        for name, config in configs.items():
            report = self._train(dataset, config)
            write_history(out_dir / f"{name}{HISTORY_SUFFIX}", report.history)
            table = AnalysisPipeline(title=f"Learnability Analysis ({name})").transform(report.history)
            write_scores(out_dir / f"{name}{SCORES_SUFFIX}", table)
            tables.append(table)
        return self._correlate(list(configs), tables, "both", 200, 100, out_dir)

    def cmd_demo_cross_optimizer(self, preset: str = "standard", epochs: int = 50, runs: int = 3, out: str | os.PathLike[str] = "demo-cross-optimizer") -> str:
        """Train one MLP with SGD (0.01), Adam (0.001) and RMSprop (0.001) from shared seeds and correlate the results.

        :param preset: The dataset preset.
        :param epochs: Epochs per run.
        :param runs: Seeded runs per optimizer.
        :param out: Directory for the histories, scores, matrices and histograms.
        :return: The report.
        """
        dataset = make_preset(preset)
        model = ModelSpec((dataset.n_features, 16, dataset.n_classes))
        configs = {kind: RunConfig(model, OptimizerSpec.default(kind), epochs=epochs, runs=runs) for kind in ("sgd", "adam", "rmsprop")}
        return self._cross_models(dataset, configs, out)

    def cmd_demo_cross_architecture(self, preset: str = "standard", epochs: int = 50, runs: int = 3, out: str | os.PathLike[str] = "demo-cross-architecture") -> str:
        """Train a small and a large MLP with SGD (0.01) from shared seeds and correlate the results.

        :param preset: The dataset preset.
        :param epochs: Epochs per run.
        :param runs: Seeded runs per model.
        :param out: Directory for the histories, scores, matrices and histograms.
        :return: The report.
        """
        dataset = make_preset(preset)
        d, n_classes = dataset.n_features, dataset.n_classes
        models = {"small": ModelSpec((d, 16, n_classes)), "large": ModelSpec((d, 64, 64, n_classes))}
        configs = {name: RunConfig(model, OptimizerSpec.default("sgd"), epochs=epochs, runs=runs) for name, model in models.items()}
        return self._cross_models(dataset, configs, out)

    def cmd_synth(
        self,
        out: str | os.PathLike[str],
        classes: int = 4,
        dim: int = 8,
        per_class: int = 500,
        spread: float = 0.6,
        label_noise: float = 0.0,
        seed: int = 0,
        separation: float = 3.0,
        preset: str | None = None,
    ) -> Path:
        """Generate a tagged blob dataset and write it as CSV.

        :param out: The CSV file.
        :param preset: A named preset, overrides the other generator settings.
        :return: The CSV file.
        """
        if preset is not None:
            dataset = make_preset(preset)
        else:
            dataset = make_blobs(classes, dim, per_class, spread, label_noise_fraction=label_noise, seed=seed, separation=separation)
        path = Path(out)
        save_csv(dataset, path)
        counts = pd.Series([tag.value for tag in dataset.difficulty_tags or ()]).value_counts()
        self.log_to_terminal(
            f"Wrote {len(dataset)} samples to {path}: " + ", ".join(f"{counts.get(tag.value, 0)} {tag.value}" for tag in DifficultyTag),
        )
        return path

