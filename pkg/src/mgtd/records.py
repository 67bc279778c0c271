"""Neutral data model and streaming JSONL I/O for document/token statistics.

The record format is model-agnostic: a scorer (any language-model runtime)
emits per-token statistics and per-document classifier probabilities, and
everything downstream works on these records alone.

Wire schema, one JSON object per line, UTF-8:

    {"id": str, "text": str?, "lang": str?, "lang_conf": float?, "label": int?,
     "tokens": [{"lp": float, "ent": float, "rank": int, "xent": float}],
     "clf": {str: float}}

Optional fields are omitted when absent; ``tokens`` and ``clf`` may be empty.
Unknown fields are ignored on read. Labels: 0 = human-written, 1 = machine.
All log-quantities are in nats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Iterator, Mapping

from .errors import DatasetError

LABEL_HUMAN = 0
LABEL_MACHINE = 1

STATISTICAL = "statistical"
CLASSIFIER = "classifier"
HIGHER_IS_MACHINE = "higher_is_machine"
LOWER_IS_MACHINE = "lower_is_machine"

# log-probabilities may exceed 0 by at most this much (float slack)
LOGPROB_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TokenRecord:
    """Statistics for one token position, everything in nats.

    ``logprob`` is the observer's log-probability of the observed token;
    ``entropy`` the observer's full-vocabulary predictive entropy; ``rank``
    the 1-based rank of the observed token in the observer's sorted
    predictive distribution; ``cross_entropy`` the observer's predictive
    distribution scored under the performer model (the two-model cross term).
    """

    logprob: float
    entropy: float
    rank: int
    cross_entropy: float

    def __post_init__(self):
        if not (math.isfinite(self.logprob) and self.logprob <= LOGPROB_TOLERANCE):
            raise DatasetError(f"token logprob must be finite and <= 0, got {self.logprob!r}")
        if not (math.isfinite(self.entropy) and self.entropy >= 0.0):
            raise DatasetError(f"token entropy must be finite and >= 0, got {self.entropy!r}")
        if not (isinstance(self.rank, int) and not isinstance(self.rank, bool) and self.rank >= 1):
            raise DatasetError(f"token rank must be an integer >= 1, got {self.rank!r}")
        if not (math.isfinite(self.cross_entropy) and self.cross_entropy >= 0.0):
            raise DatasetError(
                f"token cross-entropy must be finite and >= 0, got {self.cross_entropy!r}"
            )


@dataclass(frozen=True)
class DocumentRecord:
    """One text with its language tag, optional gold label, and statistics."""

    id: str
    text: str | None = None
    language: str | None = None
    language_confidence: float | None = None
    label: int | None = None
    tokens: tuple[TokenRecord, ...] = ()
    classifier_probs: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "classifier_probs", dict(self.classifier_probs))
        if self.label is not None and self.label not in (LABEL_HUMAN, LABEL_MACHINE):
            raise DatasetError(f"label must be 0 or 1, got {self.label!r}")
        if self.language_confidence is not None:
            if self.language is None:
                raise DatasetError("lang_conf present without lang")
            if not (0.0 <= self.language_confidence <= 1.0):
                raise DatasetError(
                    f"language confidence out of range [0,1]: {self.language_confidence!r}"
                )
        for name, prob in self.classifier_probs.items():
            if not (isinstance(prob, (int, float)) and 0.0 <= float(prob) <= 1.0):
                raise DatasetError(f"probability out of range for channel {name!r}: {prob!r}")


@dataclass(frozen=True)
class ChannelSpec:
    """A named score channel with the direction in which machine text lies."""

    name: str
    kind: str  # STATISTICAL or CLASSIFIER
    orientation: str  # HIGHER_IS_MACHINE or LOWER_IS_MACHINE

    def __post_init__(self):
        if self.kind not in (STATISTICAL, CLASSIFIER):
            raise DatasetError(f"unknown channel kind {self.kind!r}")
        if self.orientation not in (HIGHER_IS_MACHINE, LOWER_IS_MACHINE):
            raise DatasetError(f"unknown orientation {self.orientation!r}")


def _as_float(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DatasetError(f"{what} must be a number, got {value!r}")
    return float(value)


def _as_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise DatasetError(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise DatasetError(f"{what} must be an integer, got {value!r}")


def _parse_token(obj, idx: int) -> TokenRecord:
    if not isinstance(obj, dict):
        raise DatasetError(f"token {idx} is not an object")
    try:
        return TokenRecord(
            logprob=_as_float(obj["lp"], "lp"),
            entropy=_as_float(obj["ent"], "ent"),
            rank=_as_int(obj["rank"], "rank"),
            cross_entropy=_as_float(obj["xent"], "xent"),
        )
    except KeyError as exc:
        raise DatasetError(f"token {idx} missing field {exc.args[0]!r}") from None


def parse_record(line: str) -> DocumentRecord:
    """Parse one JSONL line into a DocumentRecord, enforcing all invariants."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise DatasetError("record is not a JSON object")
    if "id" not in obj or not isinstance(obj["id"], str):
        raise DatasetError("record missing string 'id'")

    text = obj.get("text")
    if text is not None and not isinstance(text, str):
        raise DatasetError("'text' must be a string")
    lang = obj.get("lang")
    if lang is not None and not isinstance(lang, str):
        raise DatasetError("'lang' must be a string")
    conf = obj.get("lang_conf")
    if conf is not None:
        conf = _as_float(conf, "lang_conf")
    label = obj.get("label")
    if label is not None:
        label = _as_int(label, "label")

    raw_tokens = obj.get("tokens", [])
    if not isinstance(raw_tokens, list):
        raise DatasetError("'tokens' must be a list")
    tokens = tuple(_parse_token(t, i) for i, t in enumerate(raw_tokens))

    raw_clf = obj.get("clf", {})
    if not isinstance(raw_clf, dict):
        raise DatasetError("'clf' must be an object")
    clf = {name: _as_float(p, f"clf[{name!r}]") for name, p in raw_clf.items()}

    return DocumentRecord(
        id=obj["id"],
        text=text,
        language=lang,
        language_confidence=conf,
        label=label,
        tokens=tokens,
        classifier_probs=clf,
    )


def record_to_json(doc: DocumentRecord) -> str:
    """Serialize one record to its canonical single-line JSON form."""
    obj: dict = {"id": doc.id}
    if doc.text is not None:
        obj["text"] = doc.text
    if doc.language is not None:
        obj["lang"] = doc.language
    if doc.language_confidence is not None:
        obj["lang_conf"] = doc.language_confidence
    if doc.label is not None:
        obj["label"] = doc.label
    obj["tokens"] = [
        {"lp": t.logprob, "ent": t.entropy, "rank": t.rank, "xent": t.cross_entropy}
        for t in doc.tokens
    ]
    obj["clf"] = dict(doc.classifier_probs)
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _iter_lines(source: Iterable[str] | IO) -> Iterator[str]:
    for raw in source:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        yield raw


def iter_dataset(source: Iterable[str] | IO) -> Iterator[DocumentRecord]:
    """Stream records from line-delimited JSON, preserving input order.

    Blank lines are skipped. Raises DatasetError with the 1-based line
    number on malformed lines, duplicate ids, or invariant violations.
    """
    seen: set[str] = set()
    for lineno, line in enumerate(_iter_lines(source), start=1):
        if not line.strip():
            continue
        try:
            doc = parse_record(line)
        except DatasetError as exc:
            raise DatasetError(f"line {lineno}: {exc}") from None
        if doc.id in seen:
            raise DatasetError(f"line {lineno}: duplicate id {doc.id!r}")
        seen.add(doc.id)
        yield doc


def read_dataset(source: Iterable[str] | IO) -> list[DocumentRecord]:
    """Read a whole JSONL dataset into memory, in input order."""
    return list(iter_dataset(source))


def write_dataset(docs: Iterable[DocumentRecord], sink: IO) -> None:
    """Write records as JSONL. Round-trips losslessly through read_dataset."""
    for doc in docs:
        sink.write(record_to_json(doc))
        sink.write("\n")


def load_dataset(path) -> list[DocumentRecord]:
    with open(path, encoding="utf-8") as fh:
        return read_dataset(fh)


def save_dataset(docs: Iterable[DocumentRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_dataset(docs, fh)


def with_text(doc: DocumentRecord, text: str) -> DocumentRecord:
    """Copy of ``doc`` with replaced text; everything else untouched."""
    return replace(doc, text=text)
