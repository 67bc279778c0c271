"""Routing of language tags to calibration buckets.

A document lands in its language's bucket only when the identified language
is in the configured known set and the identification confidence is strictly
above 0.5; everything else falls back to the shared UNKNOWN bucket. A
missing confidence with a present tag counts as externally trusted metadata.
"""

from __future__ import annotations

from .errors import DatasetError

UNKNOWN = "UNKNOWN"

# default known-language set: the eight calibration languages
DEFAULT_KNOWN_LANGUAGES = ("ar", "bg", "de", "en", "id", "ru", "ur", "zh")

CONFIDENCE_CUTOFF = 0.5


def resolve_bucket(
    lang: str | None,
    conf: float | None,
    known: frozenset[str] | set[str] | tuple[str, ...] = DEFAULT_KNOWN_LANGUAGES,
) -> str:
    """Map a language tag plus identification confidence to a bucket.

    Returns ``lang`` iff it is present, a member of ``known``, and either
    the confidence is absent (trusted metadata) or strictly greater than
    0.5. Returns UNKNOWN otherwise.
    """
    if conf is not None and not (0.0 <= conf <= 1.0):
        raise DatasetError(f"language confidence out of range [0,1]: {conf!r}")
    if lang is None or lang not in known:
        return UNKNOWN
    if conf is not None and conf <= CONFIDENCE_CUTOFF:
        return UNKNOWN
    return lang
