"""End-to-end demo: raw texts -> token statistics -> calibrated decisions.

Scores a handful of texts with the built-in bigram observer/performer pair,
then calibrates and predicts with the detection pipeline CLI on the emitted
records. Everything runs offline in a temporary directory.
"""

from __future__ import annotations

import argparse
import json
import tempfile
from pathlib import Path

from mgtd.cli import main as pipeline_main
from mgtd_scorer.cli import main as scorer_main

TEXTS = [
    ("m1", "the model writes the same word shapes again and again and again", 1),
    ("m2", "each sentence here has the same flat rhythm as the one before it", 1),
    ("m3", "the sum of the parts is the sum of the parts of the sum", 1),
    ("m4", "a list of things is a list of things that are in a list", 1),
    ("m5", "the text is the text and the text is about the text", 1),
    ("h1", "my neighbour keeps bees and swears the hives hum louder before rain", 0),
    ("h2", "we missed the last tram so we argued about maps until sunrise", 0),
    ("h3", "der hund und die katze sind nicht im haus geblieben", 0),
    ("h4", "grandma salts the dough twice because once was never enough", 0),
    ("h5", "the ferry smelled of diesel, old rope, and burnt coffee", 0),
]

PIPELINE_CONFIG = {
    "mode": "two_step",
    "stat_channels": ["entropy", "rank", "binoculars"],
    "clf_channels": ["h0", "h1"],
    "known_languages": ["en", "de"],
}


def main() -> None:
    argparse.ArgumentParser(description=__doc__).parse_args()
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        texts = root / "texts.jsonl"
        records = root / "records.jsonl"
        config = root / "config.json"
        table = root / "table.json"
        preds = root / "preds.jsonl"

        texts.write_text(
            "".join(
                json.dumps({"id": i, "text": t, "label": l}) + "\n"
                for i, t, l in TEXTS
            ),
            encoding="utf-8",
        )
        config.write_text(json.dumps(PIPELINE_CONFIG), encoding="utf-8")

        print("== score ==")
        rc = scorer_main(
            [
                "score",
                "--observer", "builtin:bigram-a",
                "--performer", "builtin:bigram-b",
                "--classifiers", "h0=builtin:ngram:0,h1=builtin:ngram:1",
                "--input", str(texts),
                "--out", str(records),
            ]
        )
        assert rc == 0
        first = json.loads(records.read_text(encoding="utf-8").splitlines()[0])
        print(
            f"first record: id={first['id']} lang={first.get('lang')} "
            f"tokens={len(first['tokens'])} clf={sorted(first['clf'])}"
        )

        print("== calibrate ==")
        assert pipeline_main(
            [
                "calibrate",
                "--config", str(config),
                "--input", str(records),
                "--out-table", str(table),
            ]
        ) == 0

        print("== predict ==")
        assert pipeline_main(
            [
                "predict",
                "--config", str(config),
                "--table", str(table),
                "--input", str(records),
                "--out", str(preds),
            ]
        ) == 0
        for line in preds.read_text(encoding="utf-8").splitlines():
            obj = json.loads(line)
            print(f"  {obj['id']}: final={obj['final']}")

        print("== evaluate ==")
        assert pipeline_main(
            [
                "evaluate",
                "--pred", str(preds),
                "--gold", str(records),
                "--out", str(root / "report.json"),
            ]
        ) == 0


if __name__ == "__main__":
    main()
