"""Command-line entry point: calibrate, predict, evaluate, obfuscate, inspect.

Exit codes: 0 success, 1 I/O or usage problems, 2 domain errors (bad
records, calibration failures, config/table mismatches).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import calibration, ensemble, evaluation, obfuscation, records
from .errors import PipelineError
from .metrics import DEFAULT_ORIENTATIONS, classifier_channel_spec, statistical_channel_spec

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2 (2 is for domain errors)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _config_hash(config: ensemble.PipelineConfig) -> str:
    canon = json.dumps(ensemble.config_to_dict(config), sort_keys=True)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def cmd_calibrate(args) -> int:
    config = ensemble.load_config(args.config)
    docs = records.load_dataset(args.input)
    table = calibration.calibrate(
        docs,
        config.threshold_channels(),
        known_languages=config.known_languages,
        min_samples=config.min_samples,
        meta={"n_docs": len(docs), "config_hash": _config_hash(config)},
    )
    calibration.save_table(table, args.out_table)
    for (channel, bucket), entry in sorted(table.entries.items()):
        print(
            f"{channel}/{bucket}: j={entry.j_stat:.4f} threshold={entry.threshold:.6g} "
            f"(n_pos={entry.n_pos} n_neg={entry.n_neg})"
        )
    return EXIT_OK


def cmd_predict(args) -> int:
    config = ensemble.load_config(args.config)
    table = calibration.load_table(args.table)
    ensemble.validate_table(table, config)
    with open(args.input, encoding="utf-8") as src, open(
        args.out, "w", encoding="utf-8"
    ) as sink:
        for doc in records.iter_dataset(src):
            pred = ensemble.predict(doc, table, config)
            sink.write(ensemble.prediction_to_json(pred))
            sink.write("\n")
    return EXIT_OK


def _inferred_channels(preds: list[ensemble.Prediction]):
    names = sorted({name for pred in preds for name in pred.channel_decisions})
    return [
        statistical_channel_spec(name)
        if name in DEFAULT_ORIENTATIONS
        else classifier_channel_spec(name)
        for name in names
    ]


def cmd_evaluate(args) -> int:
    with open(args.pred, encoding="utf-8") as fh:
        preds = ensemble.read_predictions(fh)
    gold = records.load_dataset(args.gold)
    report = evaluation.evaluate(preds, gold, channels=_inferred_channels(preds))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(evaluation.report_to_json(report))
        fh.write("\n")
    print(evaluation.render_text(report), end="")
    return EXIT_OK


def cmd_obfuscate(args) -> int:
    plan = obfuscation.ObfuscationPlan(
        sample_rate=args.sample_rate, char_rate=args.char_rate, seed=args.seed
    )
    mapping = (
        obfuscation.load_homoglyph_map(args.map)
        if args.map is not None
        else obfuscation.HOMOGLYPHS
    )
    docs = records.load_dataset(args.input)
    records.save_dataset(obfuscation.obfuscate_dataset(docs, plan, mapping), args.out)
    return EXIT_OK


def cmd_inspect(args) -> int:
    table = calibration.load_table(args.table)
    print(f"known languages: {', '.join(sorted(table.known_languages))}")
    if table.meta:
        print(f"meta: {json.dumps(dict(table.meta), sort_keys=True)}")
    header = f"{'channel':<14}{'bucket':<10}{'threshold':>12}  {'orientation':<18}{'j':>8}{'n_pos':>8}{'n_neg':>8}"
    print(header)
    print("-" * len(header))
    for (channel, bucket), e in sorted(table.entries.items()):
        print(
            f"{channel:<14}{bucket:<10}{e.threshold:>12.6g}  {e.orientation:<18}"
            f"{e.j_stat:>8.4f}{e.n_pos:>8}{e.n_neg:>8}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mgtd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="fit per-(channel, language) thresholds")
    p.add_argument("--config", required=True)
    p.add_argument("--input", required=True, help="labeled records JSONL")
    p.add_argument("--out-table", required=True)
    p.set_defaults(fn=cmd_calibrate)

    p = sub.add_parser("predict", help="apply thresholds and majority voting")
    p.add_argument("--config", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against gold labels")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out", required=True, help="report JSON path")
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("obfuscate", help="homoglyph + zero-width-joiner perturbation")
    p.add_argument("--sample-rate", type=float, required=True)
    p.add_argument("--char-rate", type=float, default=0.1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--map", default=None, help="optional homoglyph map JSON")
    p.set_defaults(fn=cmd_obfuscate)

    p = sub.add_parser("inspect", help="pretty-print a threshold table")
    p.add_argument("--table", required=True)
    p.set_defaults(fn=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
