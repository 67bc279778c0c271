"""Text perturbation utilities: homoglyph substitution and zero-width joiners.

Used to robustify a fraction of training/calibration texts. Both attacks
are applied to each selected document: confusable-character substitution
first, then zero-width-joiner insertion. All randomness flows from an
explicit seed; per-document generators are derived from the seed and the
document id, so results are order-independent and reproducible.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DatasetError
from .records import DocumentRecord, with_text

log = logging.getLogger(__name__)

ZWJ = "‍"

# fixed built-in confusable table: visually close Latin <-> Cyrillic/Greek
# counterparts, one code point each, so substitution preserves length
HOMOGLYPHS: Mapping[str, str] = {
    "a": "а", "b": "ƅ", "c": "с", "d": "ԁ", "e": "е",
    "h": "һ", "i": "і", "j": "ј", "k": "κ", "l": "ӏ",
    "m": "м", "n": "ո", "o": "о", "p": "р", "q": "ԛ",
    "r": "г", "s": "ѕ", "t": "τ", "u": "υ", "v": "ν",
    "w": "ԝ", "x": "х", "y": "у", "z": "ᴢ",
    "A": "А", "B": "В", "C": "С", "E": "Е", "G": "Ԍ",
    "H": "Н", "I": "І", "J": "Ј", "K": "К", "M": "М",
    "N": "Ν", "O": "О", "P": "Р", "S": "Ѕ", "T": "Т",
    "X": "Х", "Y": "У", "Z": "Ζ",
}


@dataclass(frozen=True)
class ObfuscationPlan:
    """Which fraction of documents to perturb, and how strongly."""

    sample_rate: float  # fraction of documents obfuscated
    char_rate: float = 0.1  # per-character substitution/insertion probability
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.sample_rate <= 1.0):
            raise DatasetError(f"sample_rate out of [0,1]: {self.sample_rate!r}")
        if not (0.0 <= self.char_rate <= 1.0):
            raise DatasetError(f"char_rate out of [0,1]: {self.char_rate!r}")


def homoglyph_obfuscate(
    text: str,
    char_rate: float,
    rng: random.Random,
    mapping: Mapping[str, str] = HOMOGLYPHS,
) -> str:
    """Replace mapped characters with their confusable counterpart with
    probability ``char_rate``; code-point count is preserved."""
    out = []
    for ch in text:
        sub = mapping.get(ch)
        if sub is not None and rng.random() < char_rate:
            out.append(sub)
        else:
            out.append(ch)
    return "".join(out)


def zwj_insert(text: str, char_rate: float, rng: random.Random) -> str:
    """Insert a zero-width joiner after each character with probability
    ``char_rate``. ``strip_zwj`` recovers ZWJ-free input exactly."""
    out = []
    for ch in text:
        out.append(ch)
        if rng.random() < char_rate:
            out.append(ZWJ)
    return "".join(out)


def strip_zwj(text: str) -> str:
    return text.replace(ZWJ, "")


def load_homoglyph_map(path) -> dict[str, str]:
    """Load a {char: char} replacement map from JSON, validating shape."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise DatasetError("homoglyph map must be a JSON object")
    for key, value in obj.items():
        if not (isinstance(key, str) and isinstance(value, str) and len(key) == 1 and len(value) == 1):
            raise DatasetError(f"homoglyph map entries must be single chars: {key!r}: {value!r}")
    return obj


def obfuscate_dataset(
    docs: Sequence[DocumentRecord],
    plan: ObfuscationPlan,
    mapping: Mapping[str, str] = HOMOGLYPHS,
) -> list[DocumentRecord]:
    """Perturb round(sample_rate * n) documents, chosen deterministically.

    Selected documents pass through homoglyph substitution then ZWJ
    insertion; ids, labels, and all statistics are preserved. Documents
    without text are skipped with a warning and the next candidate drawn.
    """
    n_target = round(plan.sample_rate * len(docs))
    order = random.Random(plan.seed).sample(range(len(docs)), len(docs))

    chosen: list[int] = []
    for idx in order:
        if len(chosen) >= n_target:
            break
        if docs[idx].text is None:
            log.warning("document %r has no text; skipping for obfuscation", docs[idx].id)
            continue
        chosen.append(idx)

    out = list(docs)
    for idx in chosen:
        doc = docs[idx]
        rng = random.Random(f"{plan.seed}:{doc.id}")
        text = homoglyph_obfuscate(doc.text, plan.char_rate, rng, mapping)
        text = zwj_insert(text, plan.char_rate, rng)
        out[idx] = with_text(doc, text)
    return out
