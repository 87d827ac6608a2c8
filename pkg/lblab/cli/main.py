"""The ``lblab`` command line. Exit codes: 0 success, 2 usage or validation, 3 parse or IO, 4 alignment or degenerate statistics."""

import argparse
import logging
import sys
from collections.abc import Sequence

from lblab.data import PRESETS
from lblab.errors import LblabError
from lblab.logging import configure_logging

from .commands import Commands

IO_EXIT_CODE = 3

logger = logging.getLogger("lblab")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per verb."""
    parser = argparse.ArgumentParser(prog="lblab", description="Sample-wise learnability: record, score, rank and compare.")
    parser.add_argument("--log-level", default=None, help="Log level, defaults to LBLAB_LOG_LEVEL or INFO")
    parser.add_argument("--no-progress", action="store_true", help="Hide training progress bars")
    verbs = parser.add_subparsers(dest="verb", required=True)

    train = verbs.add_parser("train", help="Train every run of a manifest and write history files")
    train.add_argument("manifest")

    analyze = verbs.add_parser("analyze", help="Compute learnability scores and ranks of a history file")
    analyze.add_argument("history")
    analyze.add_argument("--out", default=None, help="Scores file, <history>.scores.csv by default")
    analyze.add_argument("--show", type=int, default=0, metavar="K", help="Print the K easiest and K hardest samples")
    analyze.add_argument("--dataset", default=None, help="Dataset CSV written by synth, adds difficulty tags")

    compare = verbs.add_parser("compare", help="Correlate scores files and write 2D histograms")
    compare.add_argument("scores", nargs="+")
    compare.add_argument("--mode", choices=("score", "rank", "both"), default="both")
    compare.add_argument("--hist-bins-score", type=int, default=200)
    compare.add_argument("--hist-bins-rank", type=int, default=100)
    compare.add_argument("--out", default=".", help="Output directory")

    for verb, help_text in (
        ("demo-cross-optimizer", "Compare SGD, Adam and RMSprop on one MLP"),
        ("demo-cross-architecture", "Compare a small and a large MLP"),
    ):
        demo = verbs.add_parser(verb, help=help_text)
        demo.add_argument("--preset", choices=sorted(PRESETS), default="standard")
        demo.add_argument("--epochs", type=int, default=50)
        demo.add_argument("--runs", type=int, default=3)
        demo.add_argument("--out", default=verb)

    synth = verbs.add_parser("synth", help="Generate a tagged Gaussian blob dataset")
    synth.add_argument("--preset", choices=sorted(PRESETS), default=None)
    synth.add_argument("--classes", type=int, default=4)
    synth.add_argument("--dim", type=int, default=8)
    synth.add_argument("--per-class", type=int, default=500)
    synth.add_argument("--spread", type=float, default=0.6)
    synth.add_argument("--separation", type=float, default=3.0)
    synth.add_argument("--label-noise", type=float, default=0.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", default="blobs.csv")
    return parser


def run(args: argparse.Namespace, commands: Commands) -> None:
    """Dispatch parsed arguments to a command.

    :param args: The parsed arguments.
    :param commands: The command runner.
    """
    match args.verb:
        case "train":
            commands.cmd_train(args.manifest)
        case "analyze":
            commands.cmd_analyze(args.history, out=args.out, show=args.show, dataset_path=args.dataset)
        case "compare":
            commands.cmd_compare(args.scores, mode=args.mode, bins_score=args.hist_bins_score, bins_rank=args.hist_bins_rank, out=args.out)
        case "demo-cross-optimizer":
            commands.cmd_demo_cross_optimizer(args.preset, epochs=args.epochs, runs=args.runs, out=args.out)
        case "demo-cross-architecture":
            commands.cmd_demo_cross_architecture(args.preset, epochs=args.epochs, runs=args.runs, out=args.out)
        case "synth":
            commands.cmd_synth(
                args.out,
                classes=args.classes,
                dim=args.dim,
                per_class=args.per_class,
                spread=args.spread,
                label_noise=args.label_noise,
                seed=args.seed,
                separation=args.separation,
                preset=args.preset,
            )


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line.

    :param argv: Arguments without the program name, ``sys.argv[1:]`` if None.
    :return: The exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "compare" and len(args.scores) < 2:
        parser.error("compare needs at least 2 scores files")
    configure_logging(args.log_level)

    try:
        run(args, Commands(out=sys.stdout, show_progress=not args.no_progress))
    except LblabError as e:
        logger.error(str(e))  # noqa: TRY400
        return e.exit_code
    except OSError as e:
        logger.error(f"I/O error: {e}")  # noqa: TRY400
        return IO_EXIT_CODE
    return 0


if __name__ == "__main__":
    sys.exit(main())
