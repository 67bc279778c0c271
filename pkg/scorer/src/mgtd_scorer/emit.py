"""Batch emission of token-statistics records as line-delimited JSON.

The output schema is the detection pipeline's wire format, written
independently here so the scorer stays decoupled from that package:

  {"id","text"?,"lang"?,"lang_conf"?,"label"?,"tokens":[{"lp","ent","rank",
   "xent"}],"clf":{...}}

one record per line, keys in that order, compact separators, UTF-8 text
unescaped.  A record that was truncated to the max sequence length carries
an extra trailing "warn" field; readers of the schema ignore unknown keys.
Emission order always matches input order.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Mapping

from .classifiers import SequenceClassifier, load_classifiers
from .language import detect_language
from .models import CausalModel, ScorerError, ensure_compatible, load_model
from .scoring import DEFAULT_MAX_LENGTH, TokenStats, score_ids

__all__ = [
    "InputText",
    "ScorerConfig",
    "emit_records",
    "read_texts",
    "record_line",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScorerConfig:
    """Which models to run and how.

    ``observer`` is required; ``performer`` is optional and when absent every
    xent is 0.0, which disables the two-model ratio downstream.  ``classifiers``
    maps channel names to model specs.  ``batch_size`` bounds how many texts
    are held in memory at once; results are identical for any value.
    """

    observer: str
    performer: str | None = None
    classifiers: Mapping[str, str] = field(default_factory=dict)
    max_length: int = DEFAULT_MAX_LENGTH
    batch_size: int = 8
    device: str = "cpu"
    identify_language: bool = True

    def __post_init__(self) -> None:
        if not self.observer:
            raise ScorerError("observer model is required")
        if self.max_length < 2:
            raise ScorerError("max_length must be >= 2")
        if self.batch_size < 1:
            raise ScorerError("batch_size must be >= 1")


@dataclass(frozen=True)
class InputText:
    """One row of scorer input: an id, raw text, optional gold label."""

    id: str
    text: str
    label: int | None = None


def read_texts(source: Iterable[str] | IO) -> Iterator[InputText]:
    """Stream input rows ``{"id","text","label"?}``, rejecting duplicates.

    Duplicate ids are rejected here because the downstream reader refuses
    datasets containing them; failing early names the offending line.
    """
    seen: set[str] = set()
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ScorerError(f"line {lineno}: invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ScorerError(f"line {lineno}: expected an object")
        doc_id = obj.get("id")
        text = obj.get("text")
        if not isinstance(doc_id, str):
            raise ScorerError(f"line {lineno}: 'id' must be a string")
        if not isinstance(text, str):
            raise ScorerError(f"line {lineno}: 'text' must be a string")
        label = obj.get("label")
        if label is not None and (isinstance(label, bool) or label not in (0, 1)):
            raise ScorerError(f"line {lineno}: 'label' must be 0 or 1")
        if doc_id in seen:
            raise ScorerError(f"line {lineno}: duplicate id {doc_id!r}")
        seen.add(doc_id)
        yield InputText(id=doc_id, text=text, label=label)


def record_line(
    row: InputText,
    tokens: list[TokenStats],
    clf: Mapping[str, float],
    lang: str | None = None,
    lang_conf: float | None = None,
    warnings: list[str] | None = None,
) -> str:
    """Serialize one record to its canonical single-line JSON form."""
    obj: dict = {"id": row.id, "text": row.text}
    if lang is not None:
        obj["lang"] = lang
        if lang_conf is not None:
            obj["lang_conf"] = lang_conf
    if row.label is not None:
        obj["label"] = row.label
    obj["tokens"] = [
        {"lp": t.lp, "ent": t.ent, "rank": t.rank, "xent": t.xent} for t in tokens
    ]
    obj["clf"] = dict(clf)
    if warnings:
        obj["warn"] = list(warnings)
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def emit_records(
    rows: Iterable[InputText],
    config: ScorerConfig,
    observer: CausalModel | None = None,
    performer: CausalModel | None = None,
    classifiers: Mapping[str, SequenceClassifier] | None = None,
) -> Iterator[str]:
    """Yield one JSON line per input row, in input order.

    Models default to those named in ``config``; passing instances overrides
    loading (used by tests and embedding callers).
    """
    if observer is None:
        observer = load_model(config.observer, device=config.device)
    if performer is None and config.performer is not None:
        performer = load_model(config.performer, device=config.device)
    if performer is not None:
        ensure_compatible(observer, performer)
    if classifiers is None:
        classifiers = load_classifiers(config.classifiers, device=config.device)

    for row in rows:
        warnings: list[str] = []
        ids = observer.encode(row.text)
        if len(ids) > config.max_length:
            ids = ids[: config.max_length]
            warnings.append(f"truncated to {config.max_length} tokens")
            log.warning("%s: truncated to %d tokens", row.id, config.max_length)
        if len(ids) < 2:
            warnings.append("fewer than 2 tokens; no statistics")
            log.warning("%s: fewer than 2 tokens; no statistics", row.id)
            tokens: list[TokenStats] = []
        else:
            tokens = score_ids(ids, observer, performer)
        probs = {name: clf.probability(row.text) for name, clf in classifiers.items()}
        lang: str | None = None
        conf: float | None = None
        if config.identify_language:
            lang, detected_conf = detect_language(row.text)
            conf = detected_conf if lang is not None else None
        yield record_line(row, tokens, probs, lang, conf, warnings)
