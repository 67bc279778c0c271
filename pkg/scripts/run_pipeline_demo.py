#!/usr/bin/env python3
"""End-to-end demo: synthesize a corpus, calibrate, predict, evaluate.

Runs the full calibrate -> predict -> evaluate flow in a temp directory
and prints the evaluation table, for all four voting modes.
"""

from __future__ import annotations

import argparse
import json
import tempfile
from pathlib import Path

from mgtd.cli import main as cli_main
from mgtd.records import save_dataset
from mgtd.synthetic import synthetic_corpus

CONFIGS = {
    "two_step": {
        "mode": "two_step",
        "stat_channels": ["entropy", "rank", "binoculars"],
        "clf_channels": ["falcon", "mistral"],
    },
    "fixed_one": {
        "mode": "fixed_one",
        "stat_channels": ["binoculars"],
        "clf_channels": ["falcon", "mistral"],
    },
    "stat_only": {
        "mode": "stat_only",
        "stat_channels": ["entropy", "rank", "binoculars"],
    },
    "stat5": {
        "mode": "stat5",
        "stat_channels": ["likelihood", "entropy", "rank", "log_rank", "binoculars"],
    },
}


def run(cmd: list[str]) -> None:
    code = cli_main(cmd)
    if code != 0:
        raise SystemExit(f"command failed ({code}): {' '.join(cmd)}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--docs-per-class", type=int, default=100)
    parser.add_argument("--sigma", type=float, default=0.15)
    args = parser.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        base = Path(tmp)
        train = base / "train.jsonl"
        test = base / "test.jsonl"
        # machine_prob=1.0 so the probability-one gate in fixed_one mode fires
        save_dataset(
            synthetic_corpus(
                docs_per_class=args.docs_per_class,
                sigma=args.sigma,
                machine_prob=1.0,
                seed=args.seed,
            ),
            train,
        )
        save_dataset(
            synthetic_corpus(
                docs_per_class=args.docs_per_class,
                sigma=args.sigma,
                machine_prob=1.0,
                seed=args.seed + 1,
                id_prefix="test",
            ),
            test,
        )

        for name, cfg in CONFIGS.items():
            print(f"=== {name} ===")
            config_path = base / f"{name}.json"
            config_path.write_text(json.dumps(cfg), encoding="utf-8")
            table = base / f"{name}.table.json"
            preds = base / f"{name}.preds.jsonl"
            report = base / f"{name}.report.json"
            run(["calibrate", "--config", str(config_path), "--input", str(train),
                 "--out-table", str(table)])
            run(["predict", "--config", str(config_path), "--table", str(table),
                 "--input", str(test), "--out", str(preds)])
            run(["evaluate", "--pred", str(preds), "--gold", str(test),
                 "--out", str(report)])
            print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
