"""ROC curves, AUC, and per-(channel, language-bucket) threshold selection.

Thresholds maximize TPR - FPR on a labeled calibration set. Fitting happens
in a sign-normalized space where higher always means machine (scores of
lower-is-machine channels are negated); stored thresholds are converted back
to the channel's native direction so they can be read alongside raw scores.

Candidate thresholds sit at midpoints between adjacent distinct scores, plus
one above the maximum (the predict-nothing rule). The include-everything
rule (TPR = FPR = 1) is never a candidate: its objective value is always 0,
which the predict-nothing candidate already provides, and an uninformative
channel must come out as an all-human rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import CalibrationError, DatasetError
from .langgate import DEFAULT_KNOWN_LANGUAGES, UNKNOWN, resolve_bucket
from .metrics import score_channel
from .records import HIGHER_IS_MACHINE, LOWER_IS_MACHINE, ChannelSpec, DocumentRecord

# a per-language fit needs at least this many samples of each class,
# otherwise the language falls back to the UNKNOWN entry
DEFAULT_MIN_SAMPLES = 5


class RocPoint(NamedTuple):
    fpr: float
    tpr: float
    threshold: float  # in the normalized (higher = machine) space


@dataclass(frozen=True)
class RocCurve:
    """Tie-grouped ROC curve; starts at (0,0) and ends at (1,1)."""

    points: tuple[RocPoint, ...]
    positives: int
    negatives: int


@dataclass(frozen=True)
class ThresholdEntry:
    channel: str
    bucket: str
    threshold: float  # in the channel's native direction
    orientation: str
    j_stat: float  # TPR - FPR achieved at the threshold during calibration
    n_pos: int
    n_neg: int

    def __post_init__(self):
        if not (-1.0 <= self.j_stat <= 1.0):
            raise DatasetError(f"j statistic out of [-1,1]: {self.j_stat!r}")
        if self.n_pos + self.n_neg < 1:
            raise DatasetError("threshold entry fitted on no samples")


@dataclass(frozen=True)
class ThresholdTable:
    """Calibrated (channel, bucket) -> threshold map; the persisted artifact."""

    entries: Mapping[tuple[str, str], ThresholdEntry]
    known_languages: frozenset[str]
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(self.entries))
        object.__setattr__(self, "known_languages", frozenset(self.known_languages))
        object.__setattr__(self, "meta", dict(self.meta))
        for channel in {ch for ch, _ in self.entries}:
            if (channel, UNKNOWN) not in self.entries:
                raise DatasetError(f"channel {channel!r} has no UNKNOWN entry")

    def channels(self) -> set[str]:
        return {ch for ch, _ in self.entries}

    def lookup(self, channel: str, bucket: str) -> ThresholdEntry:
        """Entry for (channel, bucket), falling back to the UNKNOWN entry."""
        entry = self.entries.get((channel, bucket))
        if entry is None:
            entry = self.entries.get((channel, UNKNOWN))
        if entry is None:
            raise CalibrationError(f"table has no UNKNOWN entry for channel {channel!r}")
        return entry


def build_roc(
    scores: Sequence[float], labels: Sequence[int], orientation: str
) -> RocCurve:
    """Tie-grouped ROC curve over all distinct score thresholds.

    Scores are sign-normalized so that higher means machine; curve
    thresholds live in that normalized space.
    """
    if len(scores) != len(labels):
        raise CalibrationError("scores and labels differ in length")
    if len(scores) == 0:
        raise CalibrationError("degenerate calibration class: empty input")
    y = np.asarray(labels, dtype=int)
    if not np.all((y == 0) | (y == 1)):
        raise CalibrationError("labels must be binary 0/1")
    n_pos = int(y.sum())
    n_neg = int(len(y) - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise CalibrationError("degenerate calibration class: one class missing")

    s = np.asarray(scores, dtype=float)
    if orientation == LOWER_IS_MACHINE:
        s = -s
    elif orientation != HIGHER_IS_MACHINE:
        raise CalibrationError(f"unknown orientation {orientation!r}")

    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    y_sorted = y[order]

    # last index of every tie group (descending distinct scores)
    last = np.nonzero(np.append(s_sorted[1:] != s_sorted[:-1], True))[0]
    distinct = s_sorted[last]
    tp = np.cumsum(y_sorted)[last]
    fp = (last + 1) - tp

    thresholds = np.empty(len(distinct))
    if len(distinct) > 1:
        thresholds[:-1] = (distinct[:-1] + distinct[1:]) / 2.0
    thresholds[-1] = distinct[-1]

    points = [RocPoint(0.0, 0.0, float(distinct[0]) + 1.0)]
    points.extend(
        RocPoint(float(fp[k]) / n_neg, float(tp[k]) / n_pos, float(thresholds[k]))
        for k in range(len(distinct))
    )
    return RocCurve(tuple(points), n_pos, n_neg)


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under the curve's points."""
    area = 0.0
    pts = curve.points
    for a, b in zip(pts, pts[1:]):
        area += 0.5 * (a.tpr + b.tpr) * (b.fpr - a.fpr)
    return area


def youden_threshold(curve: RocCurve) -> tuple[float, float]:
    """Normalized-space threshold maximizing TPR - FPR, and that maximum.

    Ties go to the higher TPR, then to the larger (more conservative)
    threshold. The include-everything endpoint is not a candidate.
    """
    candidates = curve.points[:-1]
    best = max(candidates, key=lambda p: (p.tpr - p.fpr, p.tpr, p.threshold))
    return best.threshold, best.tpr - best.fpr


def _denormalize(threshold: float, orientation: str) -> float:
    return threshold if orientation == HIGHER_IS_MACHINE else -threshold


def _fit_entry(
    spec: ChannelSpec, bucket: str, scores: list[float], labels: list[int]
) -> ThresholdEntry:
    curve = build_roc(scores, labels, spec.orientation)
    thr_norm, j = youden_threshold(curve)
    return ThresholdEntry(
        channel=spec.name,
        bucket=bucket,
        threshold=_denormalize(thr_norm, spec.orientation),
        orientation=spec.orientation,
        j_stat=j,
        n_pos=curve.positives,
        n_neg=curve.negatives,
    )


def calibrate(
    docs: Sequence[DocumentRecord],
    channels: Sequence[ChannelSpec],
    known_languages: Iterable[str] | None = None,
    min_samples: int = DEFAULT_MIN_SAMPLES,
    meta: Mapping | None = None,
) -> ThresholdTable:
    """Fit per-(channel, bucket) thresholds from a labeled dataset.

    Every channel gets an UNKNOWN entry fitted on the full labeled pool.
    A per-language entry is added only when the bucket holds at least
    ``min_samples`` valid scores of each class. Invalid channel scores are
    excluded from fitting.
    """
    if not channels:
        raise CalibrationError("no channels configured")
    unlabeled = [d.id for d in docs if d.label is None]
    if unlabeled:
        raise CalibrationError(f"labels required (first unlabeled doc: {unlabeled[0]!r})")

    known = frozenset(known_languages if known_languages is not None else DEFAULT_KNOWN_LANGUAGES)
    buckets = [resolve_bucket(d.language, d.language_confidence, known) for d in docs]

    entries: dict[tuple[str, str], ThresholdEntry] = {}
    for spec in channels:
        valid: list[tuple[float, int, str]] = []
        for doc, bucket in zip(docs, buckets):
            score = score_channel(doc, spec)
            if score.valid:
                valid.append((score.value, doc.label, bucket))
        pool_scores = [v for v, _, _ in valid]
        pool_labels = [l for _, l, _ in valid]
        try:
            entries[(spec.name, UNKNOWN)] = _fit_entry(spec, UNKNOWN, pool_scores, pool_labels)
        except CalibrationError as exc:
            raise CalibrationError(f"channel {spec.name!r}: {exc}") from None

        for lang in sorted(known):
            sub = [(v, l) for v, l, b in valid if b == lang]
            n_pos = sum(l for _, l in sub)
            n_neg = len(sub) - n_pos
            if n_pos >= min_samples and n_neg >= min_samples:
                sub_scores = [v for v, _ in sub]
                sub_labels = [l for _, l in sub]
                entries[(spec.name, lang)] = _fit_entry(spec, lang, sub_scores, sub_labels)

    return ThresholdTable(entries=entries, known_languages=known, meta=meta or {})


def table_to_json(table: ThresholdTable) -> str:
    """Deterministic JSON form of a threshold table."""
    obj = {
        "known_languages": sorted(table.known_languages),
        "entries": [
            {
                "channel": e.channel,
                "bucket": e.bucket,
                "threshold": e.threshold,
                "orientation": e.orientation,
                "j": e.j_stat,
                "n_pos": e.n_pos,
                "n_neg": e.n_neg,
            }
            for _, e in sorted(table.entries.items())
        ],
        "meta": dict(table.meta),
    }
    return json.dumps(obj, ensure_ascii=False, indent=2)


def table_from_json(text: str) -> ThresholdTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"malformed threshold table JSON: {exc}") from None
    try:
        entries = {
            (raw["channel"], raw["bucket"]): ThresholdEntry(
                channel=raw["channel"],
                bucket=raw["bucket"],
                threshold=float(raw["threshold"]),
                orientation=raw["orientation"],
                j_stat=float(raw["j"]),
                n_pos=int(raw["n_pos"]),
                n_neg=int(raw["n_neg"]),
            )
            for raw in obj["entries"]
        }
        return ThresholdTable(
            entries=entries,
            known_languages=frozenset(obj["known_languages"]),
            meta=obj.get("meta", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError(f"malformed threshold table: {exc!r}") from None


def save_table(table: ThresholdTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(table_to_json(table))
        fh.write("\n")


def load_table(path) -> ThresholdTable:
    with open(path, encoding="utf-8") as fh:
        return table_from_json(fh.read())
