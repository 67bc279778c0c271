import pytest

from mgtd_scorer import TableModel

# Two 3-symbol first-order Markov models over the same alphabet. Rows are
# chosen so no two probabilities in a row are equal except where a test
# wants a tie, and so the two tables genuinely differ.
TOY_OBSERVER_ROWS = {
    "a": {"a": 0.5, "b": 0.3, "c": 0.2},
    "b": {"a": 0.1, "b": 0.1, "c": 0.8},
    "c": {"a": 0.4, "b": 0.4, "c": 0.2},
}
TOY_PERFORMER_ROWS = {
    "a": {"a": 0.2, "b": 0.5, "c": 0.3},
    "b": {"a": 0.6, "b": 0.2, "c": 0.2},
    "c": {"a": 0.25, "b": 0.25, "c": 0.5},
}


@pytest.fixture
def toy_observer():
    return TableModel("abc", TOY_OBSERVER_ROWS, name="toy-obs")


@pytest.fixture
def toy_performer():
    return TableModel("abc", TOY_PERFORMER_ROWS, name="toy-perf")


def tiny_hf_model(seed: int = 0):
    """Randomly initialized one-layer causal LM with a char tokenizer.

    Built in-process so tests need no downloads; weights are random but
    fixed by the seed, which is all the scoring code requires.
    """
    import torch
    from transformers import GPT2Config, GPT2LMHeadModel

    from mgtd_scorer import HFCausalModel

    torch.manual_seed(seed)
    config = GPT2Config(
        vocab_size=32, n_positions=64, n_embd=16, n_layer=1, n_head=2
    )
    model = GPT2LMHeadModel(config).eval()
    return HFCausalModel(
        model,
        encode_fn=lambda text: [ord(ch) % 32 for ch in text],
        vocab_size=32,
        name=f"tiny-{seed}",
    )
