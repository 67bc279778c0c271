"""Document-level score channels computed from per-token statistics.

Five built-in statistical channels: mean token log-probability, mean
predictive entropy, mean rank, mean log-rank, and the two-model
log-perplexity ratio. Classifier channels pass a stored machine-class
probability straight through. Additional statistical channels can be
registered as plug-ins.

Orientation conventions (machine-generated text direction): likelihood is
higher for machine text; entropy, rank, log-rank, and the perplexity ratio
are lower. A wrong sign shows up immediately as AUC < 0.5 in calibration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import fmean
from typing import Callable, Iterable, Mapping

from .errors import UnknownChannelError
from .records import (
    CLASSIFIER,
    HIGHER_IS_MACHINE,
    LOWER_IS_MACHINE,
    STATISTICAL,
    ChannelSpec,
    DocumentRecord,
)

LIKELIHOOD = "likelihood"
ENTROPY = "entropy"
RANK = "rank"
LOG_RANK = "log_rank"
BINOCULARS = "binoculars"

# Recognized plug-in slot with no built-in formula: requesting it before
# registering an implementation raises UnknownChannelError.
LLM_DEVIATION = "llm_deviation"

# below this, the perplexity-ratio denominator counts as degenerate
BINOCULARS_MIN_DENOMINATOR = 1e-12


@dataclass(frozen=True)
class ChannelScore:
    """A scalar document score; ``valid`` is False when it cannot be computed."""

    channel: str
    value: float
    valid: bool


def _invalid(channel: str) -> ChannelScore:
    return ChannelScore(channel, float("nan"), False)


def likelihood(doc: DocumentRecord) -> ChannelScore:
    """Mean observed-token log-probability. Higher for machine text."""
    if not doc.tokens:
        return _invalid(LIKELIHOOD)
    return ChannelScore(LIKELIHOOD, fmean(t.logprob for t in doc.tokens), True)


def entropy_score(doc: DocumentRecord) -> ChannelScore:
    """Mean predictive entropy. Lower for machine text."""
    if not doc.tokens:
        return _invalid(ENTROPY)
    return ChannelScore(ENTROPY, fmean(t.entropy for t in doc.tokens), True)


def rank_score(doc: DocumentRecord) -> ChannelScore:
    """Mean 1-based token rank. Lower for machine text."""
    if not doc.tokens:
        return _invalid(RANK)
    return ChannelScore(RANK, fmean(t.rank for t in doc.tokens), True)


def log_rank_score(doc: DocumentRecord) -> ChannelScore:
    """Mean natural log of token rank. Lower for machine text."""
    if not doc.tokens:
        return _invalid(LOG_RANK)
    return ChannelScore(LOG_RANK, fmean(math.log(t.rank) for t in doc.tokens), True)


def binoculars_score(doc: DocumentRecord) -> ChannelScore:
    """Observer log-perplexity over observer-performer cross-log-perplexity.

    Lower for machine text. Invalid when the cross term is degenerate
    (identical deterministic models) or the document has no tokens.
    """
    if not doc.tokens:
        return _invalid(BINOCULARS)
    denom = fmean(t.cross_entropy for t in doc.tokens)
    if denom < BINOCULARS_MIN_DENOMINATOR:
        return _invalid(BINOCULARS)
    numer = -fmean(t.logprob for t in doc.tokens)
    return ChannelScore(BINOCULARS, numer / denom, True)


_SCORERS: dict[str, Callable[[DocumentRecord], ChannelScore]] = {
    LIKELIHOOD: likelihood,
    ENTROPY: entropy_score,
    RANK: rank_score,
    LOG_RANK: log_rank_score,
    BINOCULARS: binoculars_score,
}

DEFAULT_ORIENTATIONS: dict[str, str] = {
    LIKELIHOOD: HIGHER_IS_MACHINE,
    ENTROPY: LOWER_IS_MACHINE,
    RANK: LOWER_IS_MACHINE,
    LOG_RANK: LOWER_IS_MACHINE,
    BINOCULARS: LOWER_IS_MACHINE,
}

STATISTICAL_CHANNELS = (LIKELIHOOD, ENTROPY, RANK, LOG_RANK, BINOCULARS)


def register_statistical_channel(
    name: str, fn: Callable[[DocumentRecord], ChannelScore], orientation: str
) -> None:
    """Register a plug-in statistical channel (e.g. an ``llm_deviation`` impl).

    Built-in channel names cannot be overridden.
    """
    if name in STATISTICAL_CHANNELS:
        raise ValueError(f"cannot override built-in channel {name!r}")
    if orientation not in (HIGHER_IS_MACHINE, LOWER_IS_MACHINE):
        raise ValueError(f"unknown orientation {orientation!r}")
    _SCORERS[name] = fn
    DEFAULT_ORIENTATIONS[name] = orientation


def statistical_channel_spec(name: str) -> ChannelSpec:
    if name not in DEFAULT_ORIENTATIONS:
        raise UnknownChannelError(
            f"unknown statistical channel {name!r}; built-ins: {', '.join(STATISTICAL_CHANNELS)}"
        )
    return ChannelSpec(name, STATISTICAL, DEFAULT_ORIENTATIONS[name])


def classifier_channel_spec(name: str) -> ChannelSpec:
    return ChannelSpec(name, CLASSIFIER, HIGHER_IS_MACHINE)


def score_channel(doc: DocumentRecord, spec: ChannelSpec) -> ChannelScore:
    """Score one channel; a classifier probability missing from the record
    yields an invalid score rather than an error."""
    if spec.kind == CLASSIFIER:
        prob = doc.classifier_probs.get(spec.name)
        if prob is None:
            return _invalid(spec.name)
        return ChannelScore(spec.name, float(prob), True)
    fn = _SCORERS.get(spec.name)
    if fn is None:
        raise UnknownChannelError(f"unknown statistical channel {spec.name!r}")
    return fn(doc)


def score_all(
    doc: DocumentRecord, channels: Iterable[ChannelSpec]
) -> Mapping[str, ChannelScore]:
    """One ChannelScore per requested channel, keyed by channel name."""
    return {spec.name: score_channel(doc, spec) for spec in channels}
