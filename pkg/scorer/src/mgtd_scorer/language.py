"""Script and stopword based language identification.

Deliberately small: classify by dominant letter script first (Arabic,
Cyrillic, Han, Latin), then split within a script using characters unique to
one orthography or per-language stopword profiles.  Covers the languages the
detection pipeline buckets by default (ar, bg, de, en, id, ru, ur, zh) plus
Italian, and reports (None, low) rather than guessing elsewhere.

Confidence conventions:
  - empty or whitespace-only text -> (None, 0.0)
  - no letters at all (digits, punctuation) -> (None, 0.0)
  - Latin letters but no stopword hits -> (None, 0.3): script alone cannot
    separate Latin-alphabet languages
  - otherwise confidence is the dominant-script fraction, scaled for Latin
    by the winning profile's share of stopword hits

The downstream gate treats conf > 0.5 as trusted, so anything uncertain must
stay at or below 0.5.
"""

from __future__ import annotations

import unicodedata

__all__ = ["detect_language"]

# Characters used in Urdu orthography but not standard Arabic.
_URDU_ONLY = set("ےڈٹڑںہھگچپژ")
# Letters in the Russian alphabet that Bulgarian does not use.
_RUSSIAN_ONLY = set("ыэёЫЭЁ")
# The hard sign is rare in Russian but a common vowel letter in Bulgarian.
_BULGARIAN_MARKER = set("ъЪ")

_STOPWORDS: dict[str, frozenset[str]] = {
    "en": frozenset(
        "the a an and of to in is are was were that it for on with as be this".split()
    ),
    "de": frozenset(
        "der die das und ist nicht ein eine zu den von mit sich auf für im er".split()
    ),
    "id": frozenset(
        "yang dan di itu dengan untuk tidak dari ini adalah pada akan ke juga".split()
    ),
    "it": frozenset(
        "il la di che e un una per sono con non si del le nel più".split()
    ),
    "ru": frozenset(
        "и в не на я что это с он как по но из у за то все она так".split()
    ),
    "bg": frozenset(
        "и в не на да се е за той но си от по това като ще са".split()
    ),
}

_LATIN_PROFILES = ("en", "de", "id", "it")


def _script(ch: str) -> str | None:
    code = ord(ch)
    if 0x0600 <= code <= 0x06FF or 0x0750 <= code <= 0x077F:
        return "arabic"
    if 0x0400 <= code <= 0x04FF:
        return "cyrillic"
    if 0x4E00 <= code <= 0x9FFF or 0x3400 <= code <= 0x4DBF:
        return "han"
    if unicodedata.category(ch).startswith("L"):
        if code < 0x0250 or 0x1E00 <= code <= 0x1EFF:
            return "latin"
        return "other"
    return None


def _stopword_hits(words: list[str], lang: str) -> int:
    table = _STOPWORDS[lang]
    return sum(1 for w in words if w in table)


def detect_language(text: str) -> tuple[str | None, float]:
    """Identify the language of ``text``; returns (code or None, confidence)."""
    if not text or not text.strip():
        return None, 0.0
    counts: dict[str, int] = {}
    letters = 0
    for ch in text:
        script = _script(ch)
        if script is not None:
            letters += 1
            counts[script] = counts.get(script, 0) + 1
    if letters == 0:
        return None, 0.0
    script, script_count = max(counts.items(), key=lambda kv: kv[1])
    fraction = script_count / letters

    if script == "arabic":
        code = "ur" if any(ch in _URDU_ONLY for ch in text) else "ar"
        return code, fraction
    if script == "han":
        return "zh", fraction
    if script == "cyrillic":
        if any(ch in _RUSSIAN_ONLY for ch in text):
            return "ru", fraction
        words = text.lower().split()
        ru_hits = _stopword_hits(words, "ru")
        bg_hits = _stopword_hits(words, "bg")
        if bg_hits > ru_hits:
            return "bg", fraction
        if ru_hits > bg_hits:
            return "ru", fraction
        if any(ch in _BULGARIAN_MARKER for ch in text):
            return "bg", fraction * 0.8
        return "ru", fraction * 0.5
    if script == "latin":
        words = [w.strip(".,;:!?()[]\"'«»") for w in text.lower().split()]
        words = [w for w in words if w]
        hits = {lang: _stopword_hits(words, lang) for lang in _LATIN_PROFILES}
        total = sum(hits.values())
        if total == 0:
            return None, 0.3
        best = max(_LATIN_PROFILES, key=lambda lang: (hits[lang], -_LATIN_PROFILES.index(lang)))
        share = hits[best] / total
        return best, fraction * share
    return None, 0.3
