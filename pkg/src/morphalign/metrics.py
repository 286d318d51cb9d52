"""Tokenization-quality metrics over a corpus.

Corpus token count (CTC) is the total encoded sequence length without
BOS/EOS. Fertility is CTC over the whitespace word count. Mean token length
is characters per token instance with the word marker excluded. Rényi entropy
is taken over the empirical distribution of token *types* observed in the
encoded corpus (model vocabulary entries that never occur contribute
nothing), with efficiency normalized by log2 of the observed type count.
Special tokens are never counted in any metric; CTC alone includes UNK
instances because it measures raw sequence length.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError
from .tok_core import TokenizerModel, _word_tokens

DEFAULT_ALPHA = 2.5


@dataclass(frozen=True)
class MetricsReport:
    lang: str
    ctc: int
    n_words: int
    fertility: float
    mean_token_len: float
    renyi_alpha: float
    renyi_entropy: float
    renyi_efficiency: float
    n_token_types: int


@dataclass
class _Scan:
    """Associative accumulator over corpus chunks."""

    ctc: int = 0
    n_words: int = 0
    char_total: int = 0
    n_instances: int = 0

    def __post_init__(self):
        self.type_counts: Counter[str] = Counter()

    def merge(self, other: "_Scan") -> "_Scan":
        self.ctc += other.ctc
        self.n_words += other.n_words
        self.char_total += other.char_total
        self.n_instances += other.n_instances
        self.type_counts.update(other.type_counts)
        return self


def _scan_chunk(model: TokenizerModel, lines: Sequence[str]) -> _Scan:
    acc = _Scan()
    specials = set(model.specials)
    marker = model.marker
    for line in lines:
        for word in line.split():
            toks = _word_tokens(model, word)
            acc.n_words += 1
            acc.ctc += len(toks)
            for tok in toks:
                if model.token_id(tok) is None or tok in specials:
                    continue  # unknown tokens map to UNK, a special
                acc.type_counts[tok] += 1
                acc.char_total += len(tok) - (1 if tok.startswith(marker) else 0)
                acc.n_instances += 1
    return acc


def _scan(model: TokenizerModel, lines: Sequence[str], max_workers: int = 1) -> _Scan:
    lines = list(lines)
    if max_workers <= 1 or len(lines) < 2 * max_workers:
        return _scan_chunk(model, lines)
    step = math.ceil(len(lines) / max_workers)
    chunks = [lines[i : i + step] for i in range(0, len(lines), step)]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        parts = list(pool.map(lambda c: _scan_chunk(model, c), chunks))
    acc = _Scan()
    for part in parts:
        acc.merge(part)
    return acc


def ctc(model: TokenizerModel, corpus_lines: Iterable[str]) -> int:
    """Total tokens to encode the corpus, BOS/EOS excluded."""
    return _scan(model, list(corpus_lines)).ctc


def renyi(
    model: TokenizerModel, corpus_lines: Iterable[str], alpha: float = DEFAULT_ALPHA
) -> tuple[float, float]:
    """(entropy in bits, efficiency in [0,1]) of the token-type distribution.

    alpha = 1 falls back to Shannon entropy. A single observed type yields
    entropy 0 with efficiency defined as 0.
    """
    if alpha <= 0:
        raise InputError(f"alpha must be > 0, got {alpha}")
    counts = _scan(model, list(corpus_lines)).type_counts
    return _renyi_from_counts(list(counts.values()), alpha)


def _renyi_from_counts(counts: Sequence[int], alpha: float) -> tuple[float, float]:
    if not counts:
        raise InputError("corpus encoded to zero countable tokens")
    if len(counts) == 1:
        return 0.0, 0.0
    p = np.asarray(counts, dtype=float)
    p /= p.sum()
    if alpha == 1.0:
        entropy = float(-(p * np.log2(p)).sum())
    else:
        entropy = float(np.log2((p**alpha).sum()) / (1.0 - alpha))
    return entropy, entropy / math.log2(len(counts))


def mean_token_length(model: TokenizerModel, corpus_lines: Iterable[str]) -> float:
    """Mean characters per token instance, marker excluded from lengths."""
    acc = _scan(model, list(corpus_lines))
    if acc.n_instances == 0:
        raise InputError("corpus encoded to zero countable tokens")
    return acc.char_total / acc.n_instances


def fertility(model: TokenizerModel, corpus_lines: Iterable[str]) -> float:
    acc = _scan(model, list(corpus_lines))
    if acc.n_words == 0:
        raise InputError("corpus has no words")
    return acc.ctc / acc.n_words


def compute_report(
    model: TokenizerModel,
    corpus_lines: Iterable[str],
    lang: str,
    alpha: float = DEFAULT_ALPHA,
    max_workers: int = 1,
) -> MetricsReport:
    """Full metric bundle from a single pass over the corpus."""
    if alpha <= 0:
        raise InputError(f"alpha must be > 0, got {alpha}")
    acc = _scan(model, list(corpus_lines), max_workers=max_workers)
    if acc.n_words == 0:
        raise InputError("corpus has no words")
    if acc.n_instances == 0:
        raise InputError("corpus encoded to zero countable tokens")
    entropy, efficiency = _renyi_from_counts(list(acc.type_counts.values()), alpha)
    return MetricsReport(
        lang=lang,
        ctc=acc.ctc,
        n_words=acc.n_words,
        fertility=acc.ctc / acc.n_words,
        mean_token_len=acc.char_total / acc.n_instances,
        renyi_alpha=alpha,
        renyi_entropy=entropy,
        renyi_efficiency=efficiency,
        n_token_types=len(acc.type_counts),
    )
