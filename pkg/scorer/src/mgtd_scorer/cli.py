"""Command line entry point for producing token-statistics records.

Exit codes follow the detection pipeline's convention: 0 on success, 1 for
I/O and usage errors, 2 for domain errors (bad model specs, malformed input
rows).
"""

from __future__ import annotations

import argparse
import logging
import sys

from .classifiers import parse_classifier_arg
from .emit import ScorerConfig, emit_records, read_texts
from .models import ScorerError
from .scoring import DEFAULT_MAX_LENGTH

__all__ = ["build_parser", "main"]

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; reserve 2 for domain errors instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mgtd-score",
        description="Score raw texts into token-statistics JSONL records.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser(
        "score",
        help="score texts with an observer (and optional performer) model",
    )
    score.add_argument(
        "--observer", required=True, help="observer model: builtin name or model id"
    )
    score.add_argument(
        "--performer",
        default=None,
        help="performer model for the two-model ratio; must share the observer's tokenizer",
    )
    score.add_argument(
        "--classifiers",
        default="",
        help="comma-separated name=model classifier channels",
    )
    score.add_argument(
        "--input", required=True, help="JSONL rows {id, text, label?}"
    )
    score.add_argument("--out", required=True, help="output records JSONL path")
    score.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    score.add_argument("--batch-size", type=int, default=8)
    score.add_argument("--device", default="cpu")
    score.add_argument(
        "--no-language",
        action="store_true",
        help="skip language identification (records omit lang/lang_conf)",
    )
    return parser


def cmd_score(args: argparse.Namespace) -> int:
    config = ScorerConfig(
        observer=args.observer,
        performer=args.performer,
        classifiers=parse_classifier_arg(args.classifiers),
        max_length=args.max_length,
        batch_size=args.batch_size,
        device=args.device,
        identify_language=not args.no_language,
    )
    n = 0
    with open(args.input, "r", encoding="utf-8") as src:
        with open(args.out, "w", encoding="utf-8") as dst:
            for line in emit_records(read_texts(src), config):
                dst.write(line + "\n")
                n += 1
    print(f"wrote {n} record(s) to {args.out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return cmd_score(args)
    except ScorerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
