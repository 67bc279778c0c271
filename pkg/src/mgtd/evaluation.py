"""Accuracy, per-channel AUC, confusion counts, and per-language breakdowns.

Per-channel AUC is computed from raw channel scores, so it exists only for
individual score channels; a majority vote produces no score, and the
report renders N/A for it. Per-language rows are keyed by each document's
identified language (before bucket gating), so surprise languages appear
under their own code.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .calibration import auc, build_roc
from .ensemble import Prediction
from .errors import CalibrationError, EvaluationError
from .langgate import UNKNOWN
from .metrics import score_channel
from .records import LABEL_MACHINE, ChannelSpec, DocumentRecord

log = logging.getLogger(__name__)


class Confusion(NamedTuple):
    tp: int
    fp: int
    tn: int
    fn: int


@dataclass(frozen=True)
class LanguageStats:
    accuracy: float
    n_human: int
    n_machine: int


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    per_channel_auc: Mapping[str, float]
    confusion: Confusion
    per_language: Mapping[str, LanguageStats]


def _channel_auc(
    docs: Sequence[DocumentRecord], channels: Sequence[ChannelSpec]
) -> dict[str, float]:
    out: dict[str, float] = {}
    for spec in channels:
        scores: list[float] = []
        labels: list[int] = []
        for doc in docs:
            score = score_channel(doc, spec)
            if score.valid:
                scores.append(score.value)
                labels.append(doc.label)
        try:
            out[spec.name] = auc(build_roc(scores, labels, spec.orientation))
        except CalibrationError:
            log.debug("channel %r: AUC not computable on this set", spec.name)
    return out


def evaluate(
    predictions: Sequence[Prediction],
    gold: Sequence[DocumentRecord],
    channels: Sequence[ChannelSpec] | None = None,
) -> EvalReport:
    """Score final decisions against gold labels.

    Every prediction id must resolve to a labeled gold document. When
    ``channels`` is given, per-channel AUC is computed from the raw scores
    of the evaluated documents; channels on which AUC is not computable
    (no valid scores, or one class only) are omitted.
    """
    gold_by_id = {d.id: d for d in gold}
    if len(gold_by_id) != len(gold):
        raise EvaluationError("duplicate ids in gold dataset")

    seen: set[str] = set()
    tp = fp = tn = fn = 0
    per_lang_counts: dict[str, list[int]] = {}  # lang -> [correct, n_human, n_machine]
    evaluated_docs: list[DocumentRecord] = []

    for pred in predictions:
        if pred.doc_id in seen:
            raise EvaluationError(f"duplicate prediction id {pred.doc_id!r}")
        seen.add(pred.doc_id)
        doc = gold_by_id.get(pred.doc_id)
        if doc is None:
            raise EvaluationError(f"id mismatch: prediction {pred.doc_id!r} not in gold")
        if doc.label is None:
            raise EvaluationError(f"gold label missing for id {pred.doc_id!r}")
        evaluated_docs.append(doc)

        machine = doc.label == LABEL_MACHINE
        if pred.final == 1:
            tp += machine
            fp += not machine
        else:
            fn += machine
            tn += not machine

        lang = doc.language if doc.language is not None else UNKNOWN
        counts = per_lang_counts.setdefault(lang, [0, 0, 0])
        counts[0] += pred.final == doc.label
        counts[1] += not machine
        counts[2] += machine

    n = len(predictions)
    if n == 0:
        raise EvaluationError("no predictions to evaluate")
    accuracy = (tp + tn) / n

    per_language = {
        lang: LanguageStats(
            accuracy=correct / (n_h + n_m), n_human=n_h, n_machine=n_m
        )
        for lang, (correct, n_h, n_m) in per_lang_counts.items()
    }

    per_channel_auc = _channel_auc(evaluated_docs, channels) if channels else {}

    return EvalReport(
        accuracy=accuracy,
        per_channel_auc=per_channel_auc,
        confusion=Confusion(tp, fp, tn, fn),
        per_language=per_language,
    )


def report_to_dict(report: EvalReport) -> dict:
    return {
        "accuracy": report.accuracy,
        "auc": {name: report.per_channel_auc[name] for name in sorted(report.per_channel_auc)},
        "confusion": {
            "tp": report.confusion.tp,
            "fp": report.confusion.fp,
            "tn": report.confusion.tn,
            "fn": report.confusion.fn,
        },
        "per_language": {
            lang: {
                "accuracy": stats.accuracy,
                "n_human": stats.n_human,
                "n_machine": stats.n_machine,
            }
            for lang, stats in sorted(report.per_language.items())
        },
    }


def report_to_json(report: EvalReport) -> str:
    return json.dumps(report_to_dict(report), ensure_ascii=False, indent=2)


def render_text(report: EvalReport) -> str:
    """Aligned plain-text report: accuracy plus AUC per channel, with N/A
    for the vote-only ensemble row."""
    c = report.confusion
    lines = [
        f"accuracy: {report.accuracy:.4f}  (n={c.tp + c.fp + c.tn + c.fn})",
        f"confusion: tp={c.tp} fp={c.fp} tn={c.tn} fn={c.fn}",
        "",
    ]
    names = sorted(report.per_channel_auc)
    width = max([len("ensemble")] + [len(n) for n in names]) + 2
    lines.append(f"{'channel':<{width}}AUC ROC")
    for name in names:
        lines.append(f"{name:<{width}}{report.per_channel_auc[name]:.4f}")
    lines.append(f"{'ensemble':<{width}}N/A")
    lines.append("")

    langs = sorted(report.per_language)
    if langs:
        lwidth = max(len("language"), max(len(l) for l in langs)) + 2
        lines.append(f"{'language':<{lwidth}}{'accuracy':<10}{'n_human':<9}n_machine")
        for lang in langs:
            stats = report.per_language[lang]
            lines.append(
                f"{lang:<{lwidth}}{stats.accuracy:<10.4f}{stats.n_human:<9}{stats.n_machine}"
            )
    return "\n".join(lines) + "\n"
