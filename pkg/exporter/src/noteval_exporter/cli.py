"""Command line for exporting model outputs in the scoring toolkit's formats.

Subcommands
-----------
* ``embeddings``  contextual embedding JSONL from a hidden-state encoder
* ``logprobs``    teacher-forced token log-probability JSONL from a seq2seq LM
* ``scores``      learned-metric score CSV from a regression cross-encoder

Exit codes: 0 success, 1 configuration error, 2 data or model error.
"""

from __future__ import annotations

import argparse
import sys

from .contextual import export_contextual
from .errors import ConfigError, ExporterError
from .jobs import DIRECTIONS, ExportJob
from .logprobs import export_logprobs
from .scores import export_metric_scores

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting, so main() owns the exit code."""

    def error(self, message):
        raise ConfigError(message)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True,
                        help="model directory or hub identifier")
    parser.add_argument("--dataset", required=True, help="dataset JSONL path")
    parser.add_argument("--out", required=True, help="output directory")


def _make_job(args, directions: tuple[str, ...] = ("ref_to_sys",)) -> ExportJob:
    return ExportJob(model=args.model, dataset=args.dataset, out_dir=args.out,
                     max_len=getattr(args, "max_len", 512),
                     overlap=getattr(args, "overlap", 100),
                     window=not getattr(args, "no_window", False),
                     layer=getattr(args, "layer", -1),
                     directions=directions)


def cmd_embeddings(args) -> int:
    result = export_contextual(_make_job(args))
    for key in result.skipped:
        print(f"warning: skipped {key} (no subwords)", file=sys.stderr)
    print(f"wrote {result.path} ({result.n_records} records)")
    return EXIT_OK


def cmd_logprobs(args) -> int:
    directions = tuple(d.strip() for d in args.direction.split(",") if d.strip())
    result = export_logprobs(_make_job(args, directions))
    print(f"wrote {result.path} ({result.n_records} records)")
    return EXIT_OK


def cmd_scores(args) -> int:
    result = export_metric_scores(_make_job(args), metric_name=args.metric_name)
    print(f"wrote {result.path} ({result.n_records} records)")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="noteval-export",
                     description="export model outputs in the noteval file formats")
    subs = parser.add_subparsers(dest="command")

    p = subs.add_parser("embeddings", help="contextual embedding JSONL")
    _add_common(p)
    p.add_argument("--max-len", dest="max_len", type=int, default=512,
                   help="window size in subwords (default 512)")
    p.add_argument("--overlap", type=int, default=100,
                   help="window overlap in subwords (default 100)")
    p.add_argument("--layer", type=int, default=-1,
                   help="hidden layer to export; -1 is the final layer")
    p.add_argument("--no-window", dest="no_window", action="store_true",
                   help="disable windowing; long documents become errors")
    p.set_defaults(func=cmd_embeddings)

    p = subs.add_parser("logprobs", help="token log-probability JSONL")
    _add_common(p)
    p.add_argument("--direction", default="ref_to_sys",
                   help=f"comma-separated subset of {','.join(DIRECTIONS)}")
    p.set_defaults(func=cmd_logprobs)

    p = subs.add_parser("scores", help="learned-metric score CSV")
    _add_common(p)
    p.add_argument("--metric-name", dest="metric_name", default="bleurt",
                   help="metric name for the CSV header and file stem")
    p.set_defaults(func=cmd_scores)

    return parser


def _quiet_model_loading() -> None:
    """Keep transformers' progress bars and info logs off the CLI's output."""
    from transformers.utils import logging as hf_logging
    hf_logging.set_verbosity_error()
    hf_logging.disable_progress_bar()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    _quiet_model_loading()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise ConfigError("a subcommand is required "
                              "(embeddings, logprobs, or scores)")
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ExporterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entry() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":
    entry()
