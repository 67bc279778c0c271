"""Shared hypothesis strategies and corpus builders for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from mgtd.records import DocumentRecord, TokenRecord

# text free of zero-width joiners so strip round-trip properties hold
plain_text = st.text(
    alphabet=st.characters(blacklist_characters="‍", blacklist_categories=("Cs",)),
    max_size=80,
)

finite_floats = st.floats(allow_nan=False, allow_infinity=False, width=32)

token_records = st.builds(
    TokenRecord,
    logprob=st.floats(min_value=-50.0, max_value=0.0, allow_nan=False),
    entropy=st.floats(min_value=0.0, max_value=30.0, allow_nan=False),
    rank=st.integers(min_value=1, max_value=50000),
    cross_entropy=st.floats(min_value=0.0, max_value=30.0, allow_nan=False),
)

lang_codes = st.sampled_from(["en", "de", "ru", "ar", "zh", "it", "xx"])

classifier_probs = st.dictionaries(
    st.sampled_from(["falcon", "mistral"]),
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    max_size=2,
)


@st.composite
def document_records(draw, with_label=False, min_tokens=0):
    lang = draw(st.none() | lang_codes)
    conf = None
    if lang is not None:
        conf = draw(st.none() | st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    label = draw(st.sampled_from([0, 1])) if with_label else draw(st.none() | st.sampled_from([0, 1]))
    return DocumentRecord(
        id=draw(st.uuids()).hex,
        text=draw(st.none() | plain_text),
        language=lang,
        language_confidence=conf,
        label=label,
        tokens=tuple(draw(st.lists(token_records, min_size=min_tokens, max_size=12))),
        classifier_probs=draw(classifier_probs),
    )


def make_doc(
    doc_id="d0",
    label=None,
    lang=None,
    conf=None,
    lps=(-1.0,),
    ents=None,
    ranks=None,
    xents=None,
    clf=None,
    text=None,
):
    """Terse constructor for hand-built fixtures."""
    n = len(lps)
    ents = ents if ents is not None else tuple(1.0 for _ in range(n))
    ranks = ranks if ranks is not None else tuple(1 for _ in range(n))
    xents = xents if xents is not None else tuple(1.0 for _ in range(n))
    tokens = tuple(
        TokenRecord(logprob=lp, entropy=e, rank=r, cross_entropy=x)
        for lp, e, r, x in zip(lps, ents, ranks, xents)
    )
    return DocumentRecord(
        id=doc_id,
        text=text,
        language=lang,
        language_confidence=conf,
        label=label,
        tokens=tokens,
        classifier_probs=dict(clf or {}),
    )


def labeled_gaussian_corpus(
    n_per_class=50,
    langs=("en",),
    machine_mean=0.8,
    human_mean=0.2,
    sigma=0.1,
    seed=0,
    prefix="g",
):
    """Corpus where every channel separates classes via one latent scalar."""
    rng = random.Random(seed)
    docs = []
    for lang in langs:
        for label, mean in ((1, machine_mean), (0, human_mean)):
            for i in range(n_per_class):
                x = min(max(rng.gauss(mean, sigma), 0.01), 0.99)
                inv = 1.0 - x
                docs.append(
                    make_doc(
                        doc_id=f"{prefix}-{lang}-{label}-{i}",
                        label=label,
                        lang=lang,
                        conf=0.9,
                        lps=(-inv, -inv),
                        ents=(inv, inv),
                        ranks=(max(1, round(1 + 9 * inv)),) * 2,
                        xents=(1.0, 1.0),
                        clf={"falcon": x, "mistral": x},
                    )
                )
    return docs
