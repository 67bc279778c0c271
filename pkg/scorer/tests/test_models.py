import numpy as np
import pytest

from mgtd_scorer import (
    BUILTIN_MODEL_NAMES,
    CharBigramModel,
    ScorerError,
    TableModel,
    ensure_compatible,
    load_model,
)

from conftest import TOY_OBSERVER_ROWS, tiny_hf_model


class TestTableModel:
    def test_encode_round_trip(self, toy_observer):
        assert toy_observer.encode("abcba") == [0, 1, 2, 1, 0]

    def test_unknown_character_rejected(self, toy_observer):
        with pytest.raises(ScorerError, match="not in model vocabulary"):
            toy_observer.encode("abz")

    def test_distributions_match_table(self, toy_observer):
        dists = toy_observer.predictive_distributions([0, 1, 2])
        assert dists.shape == (2, 3)
        assert np.allclose(dists[0], [0.5, 0.3, 0.2])
        assert np.allclose(dists[1], [0.1, 0.1, 0.8])

    def test_row_must_sum_to_one(self):
        rows = {"a": {"a": 0.5, "b": 0.6}, "b": {"a": 0.5, "b": 0.5}}
        with pytest.raises(ScorerError, match="sum to 1"):
            TableModel("ab", rows)

    def test_negative_probability_rejected(self):
        rows = {"a": {"a": 1.2, "b": -0.2}, "b": {"a": 0.5, "b": 0.5}}
        with pytest.raises(ScorerError, match=">= 0"):
            TableModel("ab", rows)

    def test_unknown_symbol_in_table_rejected(self):
        with pytest.raises(ScorerError, match="not in symbols"):
            TableModel("ab", {"z": {"a": 1.0}})

    def test_duplicate_symbols_rejected(self):
        with pytest.raises(ScorerError, match="unique"):
            TableModel("aa", TOY_OBSERVER_ROWS)

    def test_multichar_symbols_rejected(self):
        with pytest.raises(ScorerError, match="single characters"):
            TableModel(["ab", "c"], {})


class TestCharBigram:
    def test_rows_are_distributions(self):
        model = load_model("builtin:bigram-a")
        ids = model.encode("the quick brown fox")
        dists = model.predictive_distributions(ids)
        assert dists.shape == (len(ids) - 1, model.vocab_size)
        assert np.all(dists > 0.0)
        assert np.allclose(dists.sum(axis=1), 1.0, atol=1e-12)

    def test_builtins_share_tokenizer(self):
        a = load_model("builtin:bigram-a")
        b = load_model("builtin:bigram-b")
        assert a.tokenizer_fingerprint() == b.tokenizer_fingerprint()
        ensure_compatible(a, b)

    def test_builtins_disagree_on_distributions(self):
        a = load_model("builtin:bigram-a")
        b = load_model("builtin:bigram-b")
        ids = a.encode("the quick brown fox")
        da = a.predictive_distributions(ids)
        db = b.predictive_distributions(ids)
        assert not np.allclose(da, db)

    def test_unknown_characters_encode_as_space(self):
        model = load_model("builtin:bigram-a")
        assert model.encode("é") == model.encode(" ")

    def test_smoothing_must_be_positive(self):
        with pytest.raises(ScorerError, match="smoothing"):
            CharBigramModel("ab ab", 0.0, "bad")

    def test_builtins_are_cached(self):
        assert load_model("builtin:bigram-a") is load_model("builtin:bigram-a")


class TestCompatibility:
    def test_different_vocab_rejected(self, toy_observer):
        other = TableModel(
            "ab", {"a": {"a": 0.5, "b": 0.5}, "b": {"a": 0.5, "b": 0.5}}
        )
        with pytest.raises(ScorerError, match="share a tokenizer"):
            ensure_compatible(toy_observer, other)

    def test_same_table_accepted(self, toy_observer, toy_performer):
        ensure_compatible(toy_observer, toy_performer)


class TestRegistry:
    def test_builtin_names(self):
        assert "builtin:bigram-a" in BUILTIN_MODEL_NAMES
        assert "builtin:bigram-b" in BUILTIN_MODEL_NAMES

    def test_unknown_builtin_rejected(self):
        with pytest.raises(ScorerError, match="unknown builtin model"):
            load_model("builtin:nope")


class TestHFModel:
    def test_distribution_shape_and_normalization(self):
        model = tiny_hf_model(seed=0)
        ids = model.encode("hello world")
        dists = model.predictive_distributions(ids)
        assert dists.shape == (len(ids) - 1, 32)
        assert np.allclose(dists.sum(axis=1), 1.0, atol=1e-5)
        assert np.all(dists >= 0.0)

    def test_same_seed_same_fingerprint(self):
        assert (
            tiny_hf_model(seed=0).tokenizer_fingerprint()
            == tiny_hf_model(seed=1).tokenizer_fingerprint()
        )
