"""Produces token-statistics JSONL records from raw text.

An observer causal language model supplies per-token log-probability,
entropy, and rank; an optional performer model with the same tokenizer adds
the cross-entropy needed for the two-model ratio; sequence classifiers add
machine-probability channels; a script/stopword identifier tags language.
Output is one JSON record per line in the detection pipeline's wire format.
"""

from .classifiers import (
    HashedNgramClassifier,
    HFSequenceClassifier,
    SequenceClassifier,
    load_classifier,
    load_classifiers,
    parse_classifier_arg,
)
from .emit import InputText, ScorerConfig, emit_records, read_texts, record_line
from .language import detect_language
from .models import (
    BUILTIN_MODEL_NAMES,
    CausalModel,
    CharBigramModel,
    HFCausalModel,
    ScorerError,
    TableModel,
    ensure_compatible,
    load_model,
)
from .scoring import (
    DEFAULT_MAX_LENGTH,
    PROB_FLOOR,
    TokenStats,
    cross_entropy,
    distribution_entropy,
    observed_rank,
    score_ids,
    score_tokens,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_MODEL_NAMES",
    "CausalModel",
    "CharBigramModel",
    "DEFAULT_MAX_LENGTH",
    "HFCausalModel",
    "HFSequenceClassifier",
    "HashedNgramClassifier",
    "InputText",
    "PROB_FLOOR",
    "ScorerConfig",
    "ScorerError",
    "SequenceClassifier",
    "TableModel",
    "TokenStats",
    "__version__",
    "cross_entropy",
    "detect_language",
    "distribution_entropy",
    "emit_records",
    "ensure_compatible",
    "load_classifier",
    "load_classifiers",
    "load_model",
    "observed_rank",
    "parse_classifier_arg",
    "read_texts",
    "record_line",
    "score_ids",
    "score_tokens",
]
