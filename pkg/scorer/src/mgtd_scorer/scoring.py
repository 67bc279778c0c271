"""Per-token statistics from a causal model's predictive distributions.

For a text encoded to tokens t_0 .. t_{n-1}, statistics exist for positions
1 .. n-1 (each token predicted from its prefix; the first token has no
prefix).  For position i with observer distribution p and performer
distribution q over the vocabulary:

  lp   = ln p(t_i)                         (<= 0, nats)
  ent  = -sum_v p(v) ln p(v)               (>= 0, 0 ln 0 taken as 0)
  rank = 1-based rank of t_i under p; ties are broken by vocabulary index,
         so among equal probabilities lower-index tokens rank first
  xent = -sum_v p(v) ln q(v)               (>= 0), or 0.0 when no performer
         is given, which disables the two-model ratio downstream

Probabilities are floored at 1e-300 inside logarithms so every statistic is
finite even when a model assigns exact zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .models import CausalModel, ScorerError, ensure_compatible

__all__ = [
    "DEFAULT_MAX_LENGTH",
    "PROB_FLOOR",
    "TokenStats",
    "cross_entropy",
    "distribution_entropy",
    "observed_rank",
    "score_ids",
    "score_tokens",
]

log = logging.getLogger(__name__)

PROB_FLOOR = 1e-300
DEFAULT_MAX_LENGTH = 512


@dataclass(frozen=True)
class TokenStats:
    """Statistics for one token position; field names match the wire keys."""

    lp: float
    ent: float
    rank: int
    xent: float


def distribution_entropy(row: np.ndarray) -> float:
    """Shannon entropy in nats; zero-probability terms contribute zero."""
    nz = row[row > 0.0]
    return float(-(nz * np.log(nz)).sum())


def observed_rank(row: np.ndarray, observed: int) -> int:
    """1-based rank of ``observed`` in ``row``, ties broken by index."""
    p = row[observed]
    higher = int((row > p).sum())
    tied_before = int((row[:observed] == p).sum())
    return 1 + higher + tied_before


def cross_entropy(obs_row: np.ndarray, perf_row: np.ndarray) -> float:
    """-sum_v p(v) ln q(v) in nats, with q floored to stay finite."""
    return float(-(obs_row * np.log(np.maximum(perf_row, PROB_FLOOR))).sum())


def score_ids(
    ids: Sequence[int],
    observer: CausalModel,
    performer: CausalModel | None = None,
) -> list[TokenStats]:
    """Score an already-encoded sequence; empty when under two tokens."""
    if len(ids) < 2:
        return []
    obs = np.asarray(observer.predictive_distributions(ids), dtype=float)
    if obs.shape != (len(ids) - 1, observer.vocab_size):
        raise ScorerError(
            f"observer returned distributions of shape {obs.shape}, "
            f"expected {(len(ids) - 1, observer.vocab_size)}"
        )
    perf = None
    if performer is not None:
        ensure_compatible(observer, performer)
        perf = np.asarray(performer.predictive_distributions(ids), dtype=float)
        if perf.shape != obs.shape:
            raise ScorerError(
                f"performer returned distributions of shape {perf.shape}, "
                f"expected {obs.shape}"
            )
    out = []
    for i in range(1, len(ids)):
        row = obs[i - 1]
        observed = ids[i]
        if not 0 <= observed < row.shape[0]:
            raise ScorerError(f"token id {observed} outside vocabulary")
        lp = float(np.log(max(float(row[observed]), PROB_FLOOR)))
        ent = distribution_entropy(row)
        rank = observed_rank(row, observed)
        xent = cross_entropy(row, perf[i - 1]) if perf is not None else 0.0
        out.append(TokenStats(lp=lp, ent=ent, rank=rank, xent=xent))
    return out


def score_tokens(
    text: str,
    observer: CausalModel,
    performer: CausalModel | None = None,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> list[TokenStats]:
    """Encode ``text`` with the observer's tokenizer and score it.

    Sequences longer than ``max_length`` tokens are truncated before
    scoring.  Texts that encode to fewer than two tokens produce an empty
    list and a warning, never an error.
    """
    if max_length < 2:
        raise ScorerError("max_length must be >= 2")
    ids = observer.encode(text)
    if len(ids) < 2:
        log.warning("text encodes to %d token(s); no positions to score", len(ids))
        return []
    if len(ids) > max_length:
        log.warning("truncating %d tokens to %d", len(ids), max_length)
        ids = ids[:max_length]
    return score_ids(ids, observer, performer)
