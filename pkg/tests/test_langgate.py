"""Language bucket routing: known codes, confidence cutoff, UNKNOWN fallback."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgtd.errors import DatasetError
from mgtd.langgate import CONFIDENCE_CUTOFF, DEFAULT_KNOWN_LANGUAGES, UNKNOWN, resolve_bucket


def test_known_language_trusted_without_confidence():
    assert resolve_bucket("en", None) == "en"


def test_confident_known_language():
    assert resolve_bucket("de", 0.9) == "de"


def test_cutoff_is_strict():
    assert resolve_bucket("en", CONFIDENCE_CUTOFF) == UNKNOWN
    assert resolve_bucket("en", 0.5000001) == "en"


def test_low_confidence_routes_unknown():
    assert resolve_bucket("ru", 0.3) == UNKNOWN


def test_surprise_language_routes_unknown():
    assert resolve_bucket("it", 0.99) == UNKNOWN
    assert resolve_bucket("it", None) == UNKNOWN


def test_missing_language_routes_unknown():
    assert resolve_bucket(None, None) == UNKNOWN


def test_custom_known_set():
    assert resolve_bucket("it", 0.9, known=("it",)) == "it"
    assert resolve_bucket("en", 0.9, known=("it",)) == UNKNOWN


def test_default_known_languages():
    assert set(DEFAULT_KNOWN_LANGUAGES) == {"ar", "bg", "de", "en", "id", "ru", "ur", "zh"}


def test_confidence_out_of_range():
    with pytest.raises(DatasetError):
        resolve_bucket("en", 1.5)
    with pytest.raises(DatasetError):
        resolve_bucket("en", -0.1)


@given(
    lang=st.none() | st.sampled_from(list(DEFAULT_KNOWN_LANGUAGES) + ["it", "xx"]),
    conf=st.none() | st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
)
def test_bucket_is_lang_or_unknown(lang, conf):
    bucket = resolve_bucket(lang, conf)
    assert bucket == UNKNOWN or bucket == lang
    if bucket != UNKNOWN:
        assert lang in DEFAULT_KNOWN_LANGUAGES
        assert conf is None or conf > CONFIDENCE_CUTOFF
