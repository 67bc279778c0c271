"""Sequence classifiers producing a machine-probability per text.

A classifier maps text to a probability in [0, 1] that the text is machine
generated (1 = machine).  The same text must always produce the same
probability; downstream calibration assumes determinism.

``HashedNgramClassifier`` is the self-contained default: character trigrams
hashed with crc32 into a fixed-width feature vector, pushed through a frozen
logistic layer whose weights are derived from a seed.  It is a deterministic
stand-in with the right interface, not a trained detector.
"""

from __future__ import annotations

import math
import random
import zlib
from typing import Mapping, Protocol, runtime_checkable

from .models import ScorerError

__all__ = [
    "HFSequenceClassifier",
    "HashedNgramClassifier",
    "SequenceClassifier",
    "load_classifier",
    "load_classifiers",
    "parse_classifier_arg",
]


@runtime_checkable
class SequenceClassifier(Protocol):
    """Structural interface for probability channels."""

    name: str

    def probability(self, text: str) -> float: ...


class HashedNgramClassifier:
    """Frozen logistic over crc32-hashed character trigrams.

    Weights are drawn once from ``random.Random(seed)`` at construction, so
    two instances with the same seed and dimension agree exactly and
    different seeds give independent channels.
    """

    def __init__(self, seed: int = 0, dim: int = 64, name: str | None = None) -> None:
        if dim < 1:
            raise ScorerError("dim must be >= 1")
        rng = random.Random(seed)
        self.name = name if name is not None else f"builtin:ngram:{seed}"
        self._dim = dim
        self._weights = [rng.gauss(0.0, 1.0) for _ in range(dim)]
        self._bias = rng.gauss(0.0, 0.1)

    def probability(self, text: str) -> float:
        # Pad so even 1-character texts contribute at least one trigram.
        padded = f"^{text}$"
        counts = [0.0] * self._dim
        total = 0
        for i in range(len(padded) - 2):
            trigram = padded[i : i + 3].encode("utf-8")
            counts[zlib.crc32(trigram) % self._dim] += 1.0
            total += 1
        z = self._bias
        if total:
            z += sum(w * c / total for w, c in zip(self._weights, counts))
        return 1.0 / (1.0 + math.exp(-z))


class HFSequenceClassifier:
    """Adapter exposing a transformers sequence classifier.

    ``machine_index`` selects which softmax output is reported as the
    machine probability (index 1 by convention for binary heads).
    """

    def __init__(
        self,
        model,
        tokenizer,
        name: str = "hf",
        machine_index: int = 1,
        device: str = "cpu",
        max_length: int = 512,
    ) -> None:
        self.name = name
        self.device = device
        self._model = model
        self._tokenizer = tokenizer
        self._machine_index = machine_index
        self._max_length = max_length

    @classmethod
    def from_pretrained(
        cls, model_id: str, device: str = "cpu", machine_index: int = 1
    ) -> "HFSequenceClassifier":
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = (
            AutoModelForSequenceClassification.from_pretrained(model_id)
            .to(device)
            .eval()
        )
        return cls(model, tokenizer, name=model_id, machine_index=machine_index, device=device)

    def probability(self, text: str) -> float:
        import torch

        with torch.no_grad():
            enc = self._tokenizer(
                text,
                return_tensors="pt",
                truncation=True,
                max_length=self._max_length,
            ).to(self.device)
            logits = self._model(**enc).logits[0].float()
            probs = torch.softmax(logits, dim=-1)
        return float(probs[self._machine_index].item())


def load_classifier(spec: str, device: str = "cpu") -> SequenceClassifier:
    """Resolve a classifier spec: ``builtin:ngram[:seed]`` or a model id."""
    if spec == "builtin:ngram":
        return HashedNgramClassifier(seed=0)
    if spec.startswith("builtin:ngram:"):
        tail = spec.rsplit(":", 1)[1]
        try:
            seed = int(tail)
        except ValueError:
            raise ScorerError(f"bad builtin classifier seed {tail!r}") from None
        return HashedNgramClassifier(seed=seed)
    if spec.startswith("builtin:"):
        raise ScorerError(f"unknown builtin classifier {spec!r}")
    return HFSequenceClassifier.from_pretrained(spec, device=device)


def parse_classifier_arg(arg: str) -> dict[str, str]:
    """Parse ``name=model,name=model`` into an ordered mapping."""
    out: dict[str, str] = {}
    for part in arg.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, spec = part.partition("=")
        name = name.strip()
        spec = spec.strip()
        if not sep or not name or not spec:
            raise ScorerError(
                f"bad classifier entry {part!r}; expected name=model"
            )
        if name in out:
            raise ScorerError(f"duplicate classifier name {name!r}")
        out[name] = spec
    return out


def load_classifiers(
    specs: Mapping[str, str], device: str = "cpu"
) -> dict[str, SequenceClassifier]:
    """Load every named channel, preserving the mapping order."""
    return {name: load_classifier(spec, device=device) for name, spec in specs.items()}
