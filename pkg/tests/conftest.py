from __future__ import annotations

import pytest

from morphalign.tok_core import DEFAULT_SPECIALS, MARKER, Segmentation, TokenizerModel


def make_unigram(entries: dict[str, float], marker: str = MARKER) -> TokenizerModel:
    """Unigram model from {token: log-prob}; specials get score 0."""
    vocab = DEFAULT_SPECIALS + tuple(entries)
    scores = (0.0,) * len(DEFAULT_SPECIALS) + tuple(entries.values())
    return TokenizerModel(kind="unigram", vocab=vocab, scores=scores, marker=marker)


def make_segmenter(table: dict[str, list[str]]):
    """Mock tokenizer: fixed word -> token list lookup."""

    def segment(word: str) -> Segmentation:
        return Segmentation.from_tokens(word, table[word])

    return segment


@pytest.fixture
def aldiz_model() -> TokenizerModel:
    # scores chosen so 'al'+'diz' (-2) beats 'aldi'+'z' (-6) and char paths
    chars = {c: -10.0 for c in "aldiz"}
    return make_unigram({"al": -1.0, "diz": -1.0, "aldi": -3.0, "z": -3.0, **chars})
