"""Threshold application and majority-vote combination of channel decisions.

Votes are combined per the configured variant:

- ``two_step``: majority over the three statistical channel decisions first,
  then majority over that result and the two classifier decisions.
- ``stat_only`` / ``stat5``: flat majority over 3 or 5 statistical channels.
- ``fixed_one``: each classifier votes machine only at probability 1 (within
  epsilon); the single statistical channel uses its calibrated threshold;
  final is the majority of those three votes.

A channel whose score is invalid or absent contributes a human (0) vote:
texts that cannot be scored are not flagged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Sequence

from .calibration import DEFAULT_MIN_SAMPLES, ThresholdEntry, ThresholdTable
from .errors import ConfigError, DatasetError
from .langgate import DEFAULT_KNOWN_LANGUAGES, UNKNOWN, resolve_bucket
from .metrics import (
    ChannelScore,
    classifier_channel_spec,
    score_all,
    statistical_channel_spec,
)
from .records import CLASSIFIER, LOWER_IS_MACHINE, ChannelSpec, DocumentRecord

MODE_TWO_STEP = "two_step"
MODE_FIXED_ONE = "fixed_one"
MODE_STAT_ONLY = "stat_only"
MODE_STAT5 = "stat5"
MODES = (MODE_TWO_STEP, MODE_FIXED_ONE, MODE_STAT_ONLY, MODE_STAT5)

# slack when testing classifier probabilities against 1.0 in fixed_one mode;
# absorbs probabilities serialized as 0.9999999999 instead of 1.0
DEFAULT_EPSILON_ONE = 1e-9


@dataclass(frozen=True)
class PipelineConfig:
    """Variant selection plus the channel and language configuration."""

    mode: str
    stat_channels: tuple[str, ...]
    clf_channels: tuple[str, ...] = ()
    known_languages: tuple[str, ...] = DEFAULT_KNOWN_LANGUAGES
    min_samples: int = DEFAULT_MIN_SAMPLES
    epsilon_one: float = DEFAULT_EPSILON_ONE
    homoglyph_map_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "stat_channels", tuple(self.stat_channels))
        object.__setattr__(self, "clf_channels", tuple(self.clf_channels))
        object.__setattr__(self, "known_languages", tuple(self.known_languages))
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        names = list(self.stat_channels) + list(self.clf_channels)
        if len(set(names)) != len(names):
            raise ConfigError("channel names must be unique across the configuration")
        n_stat, n_clf = len(self.stat_channels), len(self.clf_channels)
        if self.mode == MODE_TWO_STEP and (n_stat != 3 or n_clf != 2):
            raise ConfigError("two_step mode needs 3 statistical and 2 classifier channels")
        if self.mode == MODE_FIXED_ONE and (n_stat != 1 or n_clf != 2):
            raise ConfigError("fixed_one mode needs 1 statistical and 2 classifier channels")
        if self.mode == MODE_STAT_ONLY and (n_stat != 3 or n_clf != 0):
            raise ConfigError("stat_only mode needs exactly 3 statistical channels")
        if self.mode == MODE_STAT5 and (n_stat != 5 or n_clf != 0):
            raise ConfigError("stat5 mode needs exactly 5 statistical channels")

    def channel_specs(self) -> list[ChannelSpec]:
        specs = [statistical_channel_spec(name) for name in self.stat_channels]
        specs.extend(classifier_channel_spec(name) for name in self.clf_channels)
        return specs

    def threshold_channels(self) -> list[ChannelSpec]:
        """Channels whose decisions need a calibrated threshold entry."""
        specs = [statistical_channel_spec(name) for name in self.stat_channels]
        if self.mode == MODE_TWO_STEP:
            specs.extend(classifier_channel_spec(name) for name in self.clf_channels)
        return specs


def config_from_dict(obj: Mapping) -> PipelineConfig:
    try:
        return PipelineConfig(
            mode=obj["mode"],
            stat_channels=tuple(obj.get("stat_channels", ())),
            clf_channels=tuple(obj.get("clf_channels", ())),
            known_languages=tuple(obj.get("known_languages", DEFAULT_KNOWN_LANGUAGES)),
            min_samples=int(obj.get("min_samples", DEFAULT_MIN_SAMPLES)),
            epsilon_one=float(obj.get("epsilon_one", DEFAULT_EPSILON_ONE)),
            homoglyph_map_path=obj.get("homoglyph_map_path"),
        )
    except KeyError as exc:
        raise ConfigError(f"config missing key {exc.args[0]!r}") from None


def config_to_dict(config: PipelineConfig) -> dict:
    obj = {
        "mode": config.mode,
        "stat_channels": list(config.stat_channels),
        "clf_channels": list(config.clf_channels),
        "known_languages": list(config.known_languages),
        "min_samples": config.min_samples,
        "epsilon_one": config.epsilon_one,
    }
    if config.homoglyph_map_path is not None:
        obj["homoglyph_map_path"] = config.homoglyph_map_path
    return obj


def load_config(path) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config JSON: {exc}") from None
    return config_from_dict(obj)


@dataclass(frozen=True)
class Prediction:
    """Per-channel decisions, the staged vote, and the final label."""

    doc_id: str
    bucket: str
    channel_decisions: Mapping[str, int | None]
    stat_vote: int | None
    final: int
    mode: str

    def __post_init__(self):
        object.__setattr__(self, "channel_decisions", dict(self.channel_decisions))


def apply_threshold(score: ChannelScore, entry: ThresholdEntry) -> int:
    """1 iff the score lies at or beyond the threshold in machine direction."""
    if not score.valid:
        raise ConfigError(f"cannot threshold invalid score for channel {score.channel!r}")
    if entry.channel != score.channel:
        raise ConfigError(
            f"threshold entry for {entry.channel!r} applied to score of {score.channel!r}"
        )
    value, threshold = score.value, entry.threshold
    if entry.orientation == LOWER_IS_MACHINE:
        value, threshold = -value, -threshold
    return 1 if value >= threshold else 0


def stat_majority(d1: int, d2: int, d3: int) -> int:
    """Majority of the three statistical channel decisions."""
    return 1 if d1 + d2 + d3 >= 2 else 0


def final_vote(stat: int, clf1: int, clf2: int) -> int:
    """Majority of the staged statistical vote and the two classifier votes."""
    return 1 if stat + clf1 + clf2 >= 2 else 0


def _vote(decision: int | None) -> int:
    # unscoreable channels vote human
    return 0 if decision is None else decision


def validate_table(table: ThresholdTable, config: PipelineConfig) -> None:
    """Check the table holds an UNKNOWN entry for every channel the mode needs."""
    for spec in config.threshold_channels():
        if (spec.name, UNKNOWN) not in table.entries:
            raise ConfigError(f"table missing UNKNOWN entry for channel {spec.name!r}")


def predict(
    doc: DocumentRecord, table: ThresholdTable, config: PipelineConfig
) -> Prediction:
    """Deterministic per-document decision under the configured variant."""
    validate_table(table, config)
    bucket = resolve_bucket(
        doc.language, doc.language_confidence, set(config.known_languages)
    )
    specs = config.channel_specs()
    scores = score_all(doc, specs)

    decisions: dict[str, int | None] = {}
    for spec in specs:
        score = scores[spec.name]
        if not score.valid:
            decisions[spec.name] = None
        elif config.mode == MODE_FIXED_ONE and spec.kind == CLASSIFIER:
            decisions[spec.name] = 1 if score.value >= 1.0 - config.epsilon_one else 0
        else:
            decisions[spec.name] = apply_threshold(score, table.lookup(spec.name, bucket))

    stat_votes = [_vote(decisions[name]) for name in config.stat_channels]
    clf_votes = [_vote(decisions[name]) for name in config.clf_channels]

    stat_vote: int | None = None
    if config.mode == MODE_TWO_STEP:
        stat_vote = stat_majority(*stat_votes)
        final = final_vote(stat_vote, *clf_votes)
    elif config.mode == MODE_FIXED_ONE:
        votes = clf_votes + stat_votes
        final = 1 if sum(votes) >= 2 else 0
    else:  # stat_only, stat5: flat majority over an odd channel count
        final = 1 if 2 * sum(stat_votes) > len(stat_votes) else 0

    return Prediction(
        doc_id=doc.id,
        bucket=bucket,
        channel_decisions=decisions,
        stat_vote=stat_vote,
        final=final,
        mode=config.mode,
    )


def prediction_to_json(pred: Prediction) -> str:
    obj: dict = {
        "id": pred.doc_id,
        "bucket": pred.bucket,
        "decisions": dict(pred.channel_decisions),
    }
    if pred.stat_vote is not None:
        obj["stat_vote"] = pred.stat_vote
    obj["final"] = pred.final
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def parse_prediction(line: str) -> Prediction:
    """Parse one serialized prediction.

    The wire format does not carry the voting mode; the reconstructed
    ``mode`` is a best guess from the presence of ``stat_vote`` and only
    labels the object, it does not affect any recorded decision.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"malformed prediction JSON: {exc}") from None
    try:
        return Prediction(
            doc_id=obj["id"],
            bucket=obj["bucket"],
            channel_decisions=dict(obj["decisions"]),
            stat_vote=obj.get("stat_vote"),
            final=obj["final"],
            mode=MODE_TWO_STEP if "stat_vote" in obj else MODE_FIXED_ONE,
        )
    except (KeyError, TypeError) as exc:
        raise DatasetError(f"malformed prediction record: {exc!r}") from None


def write_predictions(preds: Iterable[Prediction], sink: IO) -> None:
    for pred in preds:
        sink.write(prediction_to_json(pred))
        sink.write("\n")


def read_predictions(source: Iterable[str] | IO) -> list[Prediction]:
    preds = []
    for lineno, line in enumerate(source, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            preds.append(parse_prediction(line))
        except DatasetError as exc:
            raise DatasetError(f"line {lineno}: {exc}") from None
    return preds
