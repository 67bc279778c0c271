"""Causal language models that expose per-position predictive distributions.

Every model used for scoring implements the ``CausalModel`` protocol:
``encode`` maps text to a token id sequence and ``predictive_distributions``
returns, for a sequence of n ids, an ``[n - 1, vocab_size]`` array of
probabilities where row ``i`` is the model's distribution over token ``i + 1``
given tokens ``0 .. i``.  Rank and entropy computations downstream assume each
row is a probability vector (non-negative, summing to one).

Two models can be paired as observer and performer only when they share a
tokenizer.  Sharing is checked via ``tokenizer_fingerprint``; mismatched
fingerprints are rejected rather than approximated.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from typing import Mapping, Protocol, Sequence, runtime_checkable

import numpy as np

__all__ = [
    "BUILTIN_MODEL_NAMES",
    "CausalModel",
    "CharBigramModel",
    "HFCausalModel",
    "ScorerError",
    "TableModel",
    "ensure_compatible",
    "load_model",
]


class ScorerError(Exception):
    """Domain error in model construction or scoring."""


# Fixed probe used to fingerprint tokenizer behaviour.  Mixes scripts and
# digits so that tokenizers with different vocabularies disagree on it.
_PROBE_TEXT = "Observer 42: why ranks tie, and where entropy peaks."


def _fingerprint(vocab_size: int, probe_ids: Sequence[int]) -> str:
    payload = f"{vocab_size}:{','.join(str(i) for i in probe_ids)}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@runtime_checkable
class CausalModel(Protocol):
    """Structural interface required of observer and performer models."""

    name: str

    @property
    def vocab_size(self) -> int: ...

    def encode(self, text: str) -> list[int]: ...

    def predictive_distributions(self, ids: Sequence[int]) -> np.ndarray: ...

    def tokenizer_fingerprint(self) -> str: ...


def ensure_compatible(observer: CausalModel, performer: CausalModel) -> None:
    """Reject observer/performer pairs whose tokenizers differ.

    Cross entropy sums P_observer(v) * log P_performer(v) over a shared
    vocabulary; with different tokenizers the terms are not comparable, so
    the pair is refused outright instead of being approximated.
    """
    fo = observer.tokenizer_fingerprint()
    fp = performer.tokenizer_fingerprint()
    if fo != fp:
        raise ScorerError(
            "observer and performer must share a tokenizer: "
            f"{observer.name!r} and {performer.name!r} disagree"
        )


class TableModel:
    """First-order Markov model with an explicit transition table.

    ``symbols`` lists the single-character vocabulary in index order and
    ``transitions[prev][nxt]`` gives P(next char = nxt | prev).  Probabilities
    are used exactly as given (validated to sum to 1 within 1e-6 per row) so
    hand-computed expectations hold to float precision.
    """

    def __init__(
        self,
        symbols: Sequence[str],
        transitions: Mapping[str, Mapping[str, float]],
        name: str = "table",
    ) -> None:
        syms = tuple(symbols)
        if len(set(syms)) != len(syms) or not syms:
            raise ScorerError("symbols must be non-empty and unique")
        if any(len(s) != 1 for s in syms):
            raise ScorerError("symbols must be single characters")
        index = {s: i for i, s in enumerate(syms)}
        matrix = np.zeros((len(syms), len(syms)), dtype=float)
        for prev, row in transitions.items():
            if prev not in index:
                raise ScorerError(f"transition row {prev!r} not in symbols")
            for nxt, p in row.items():
                if nxt not in index:
                    raise ScorerError(f"transition target {nxt!r} not in symbols")
                if p < 0.0:
                    raise ScorerError("transition probabilities must be >= 0")
                matrix[index[prev], index[nxt]] = p
        sums = matrix.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > 1e-6):
            raise ScorerError("each transition row must sum to 1 within 1e-6")
        self.symbols = syms
        self.matrix = matrix
        self.name = name

    @property
    def vocab_size(self) -> int:
        return len(self.symbols)

    def encode(self, text: str) -> list[int]:
        index = {s: i for i, s in enumerate(self.symbols)}
        out = []
        for ch in text:
            if ch not in index:
                raise ScorerError(f"character {ch!r} not in model vocabulary")
            out.append(index[ch])
        return out

    def predictive_distributions(self, ids: Sequence[int]) -> np.ndarray:
        prev = np.asarray(ids[:-1], dtype=int)
        return self.matrix[prev].copy()

    def tokenizer_fingerprint(self) -> str:
        return _fingerprint(self.vocab_size, self.encode(_val_probe(self.symbols)))


def _val_probe(symbols: Sequence[str]) -> str:
    # Table models have tiny vocabularies; probe with their own symbols.
    return "".join(symbols)


# Corpus embedded so the built-in models work with no network or model files.
_BUILTIN_CORPUS = (
    "counting characters is a small but honest way to model text. "
    "a bigram table holds one row per character and one column per character. "
    "each row is a probability vector over the next character. "
    "smoothing spreads a little mass over pairs that were never seen, "
    "so no transition has probability zero and every log stays finite. "
    "two tables built from the same text with different smoothing disagree "
    "just enough to make their ratio informative. "
    "the quick brown fox jumps over the lazy dog. "
    "pack my box with five dozen liquor jugs."
)


class CharBigramModel:
    """Character bigram model with add-k smoothing over an embedded corpus.

    Both built-in variants share the corpus and therefore the vocabulary and
    encoding, so they can be paired as observer and performer.  Different
    smoothing constants give them genuinely different distributions.
    Characters outside the vocabulary encode as the space character.
    """

    def __init__(self, corpus: str, smoothing: float, name: str) -> None:
        if smoothing <= 0.0:
            raise ScorerError("smoothing must be > 0")
        if " " not in corpus:
            raise ScorerError("corpus must contain a space (the unknown fallback)")
        self.name = name
        self._vocab = tuple(sorted(set(corpus)))
        self._index = {c: i for i, c in enumerate(self._vocab)}
        v = len(self._vocab)
        counts = np.zeros((v, v), dtype=float)
        for a, b in zip(corpus, corpus[1:]):
            counts[self._index[a], self._index[b]] += 1.0
        self._matrix = (counts + smoothing) / (
            counts.sum(axis=1, keepdims=True) + smoothing * v
        )

    @property
    def vocab_size(self) -> int:
        return len(self._vocab)

    def encode(self, text: str) -> list[int]:
        space = self._index[" "]
        return [self._index.get(ch, space) for ch in text]

    def predictive_distributions(self, ids: Sequence[int]) -> np.ndarray:
        prev = np.asarray(ids[:-1], dtype=int)
        return self._matrix[prev].copy()

    def tokenizer_fingerprint(self) -> str:
        return _fingerprint(self.vocab_size, self.encode(_PROBE_TEXT))


class HFCausalModel:
    """Adapter exposing a transformers causal LM as a ``CausalModel``.

    Accepts any object with a ``__call__`` returning ``.logits`` of shape
    ``[1, n, vocab]`` plus an ``encode_fn``; ``from_pretrained`` wires up the
    usual tokenizer + model pair.  torch is imported lazily so the rest of
    the package works without it.
    """

    def __init__(
        self,
        model,
        encode_fn,
        vocab_size: int,
        name: str = "hf",
        device: str = "cpu",
    ) -> None:
        self.name = name
        self.device = device
        self._model = model
        self._encode_fn = encode_fn
        self._vocab_size = int(vocab_size)
        self._fingerprint: str | None = None

    @classmethod
    def from_pretrained(cls, model_id: str, device: str = "cpu") -> "HFCausalModel":
        from transformers import AutoModelForCausalLM, AutoTokenizer

        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModelForCausalLM.from_pretrained(model_id).to(device).eval()
        return cls(
            model,
            encode_fn=lambda text: list(tokenizer.encode(text)),
            vocab_size=int(model.config.vocab_size),
            name=model_id,
            device=device,
        )

    @property
    def vocab_size(self) -> int:
        return self._vocab_size

    def encode(self, text: str) -> list[int]:
        return list(self._encode_fn(text))

    def predictive_distributions(self, ids: Sequence[int]) -> np.ndarray:
        import torch

        with torch.no_grad():
            x = torch.tensor([list(ids)], dtype=torch.long, device=self.device)
            logits = self._model(x).logits[0].float()
            probs = torch.softmax(logits[:-1], dim=-1)
        return probs.cpu().numpy()

    def tokenizer_fingerprint(self) -> str:
        if self._fingerprint is None:
            self._fingerprint = _fingerprint(self.vocab_size, self.encode(_PROBE_TEXT))
        return self._fingerprint


BUILTIN_MODEL_NAMES = ("builtin:bigram-a", "builtin:bigram-b")


@lru_cache(maxsize=None)
def _builtin(name: str) -> CharBigramModel:
    smoothing = {"builtin:bigram-a": 0.5, "builtin:bigram-b": 2.0}[name]
    return CharBigramModel(_BUILTIN_CORPUS, smoothing, name)


def load_model(spec: str, device: str = "cpu") -> CausalModel:
    """Resolve a model spec: a builtin name or a transformers model id/path."""
    if spec in BUILTIN_MODEL_NAMES:
        return _builtin(spec)
    if spec.startswith("builtin:"):
        raise ScorerError(
            f"unknown builtin model {spec!r}; available: {', '.join(BUILTIN_MODEL_NAMES)}"
        )
    return HFCausalModel.from_pretrained(spec, device=device)
