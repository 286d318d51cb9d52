"""Controlled synthetic corpora along the fusional/agglutinative axis.

An agglutinative word chains one affix per slot onto a root
(root + affix_1 + ... + affix_k); a fusional word takes exactly one affix
from a portmanteau paradigm (root + affix). Roots follow a Zipf distribution
so rare-word-form sparsity shows up in entropy numbers. Every word form
carries a gold morpheme boundary at the root/first-affix cut, mirroring the
lemma-prefix rule used for real data, so the two pipelines are comparable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConfigError, InputError
from .morphscore import MorphItem
from .tok_core import Segmentation

AGGLUTINATIVE = "agglutinative"
FUSIONAL = "fusional"

# Above this many candidate strings of a given length range we sample by
# rejection; below it we can afford full enumeration when rejection stalls.
_ENUM_LIMIT = 100_000


@dataclass(frozen=True)
class SynthSpec:
    typology: str
    n_roots: int
    root_len_range: tuple[int, int]
    affix_len_range: tuple[int, int]
    alphabet: tuple[str, ...]
    n_slots: int = 0  # agglutinative only, >= 1
    n_affixes_per_slot: int = 0  # agglutinative only
    paradigm_size: int = 0  # fusional only
    zipf_s: float = 1.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "root_len_range", tuple(self.root_len_range))
        object.__setattr__(self, "affix_len_range", tuple(self.affix_len_range))
        if self.typology not in (AGGLUTINATIVE, FUSIONAL):
            raise ConfigError(
                f"typology must be {AGGLUTINATIVE!r} or {FUSIONAL!r}, got {self.typology!r}"
            )
        if self.n_roots < 1:
            raise ConfigError("n_roots must be >= 1")
        for name, (lo, hi) in (
            ("root_len_range", self.root_len_range),
            ("affix_len_range", self.affix_len_range),
        ):
            if lo < 1 or hi < lo:
                raise ConfigError(f"{name} must satisfy 1 <= min <= max, got ({lo}, {hi})")
        if len(set(self.alphabet)) < 2 or any(len(c) != 1 for c in self.alphabet):
            raise ConfigError("alphabet needs >= 2 distinct single characters")
        if self.zipf_s < 0:
            raise ConfigError("zipf_s must be >= 0")
        if self.typology == AGGLUTINATIVE:
            if self.n_slots < 1:
                raise ConfigError("agglutinative specs need n_slots >= 1")
            if self.n_affixes_per_slot < 1:
                raise ConfigError("agglutinative specs need n_affixes_per_slot >= 1")
        else:
            if self.paradigm_size < 1:
                raise ConfigError("fusional specs need paradigm_size >= 1")
        cap = _capacity(len(set(self.alphabet)), *self.root_len_range)
        if self.n_roots > cap:
            raise ConfigError(
                f"alphabet too small: {self.n_roots} distinct roots requested, "
                f"only {cap} strings available"
            )
        need = self.n_affixes_per_slot if self.typology == AGGLUTINATIVE else self.paradigm_size
        cap = _capacity(len(set(self.alphabet)), *self.affix_len_range)
        if need > cap:
            raise ConfigError(
                f"alphabet too small: {need} distinct affixes requested, "
                f"only {cap} strings available"
            )


@dataclass(frozen=True)
class SynthCorpus:
    lines: tuple[str, ...]
    gold: tuple[MorphItem, ...]
    spec: SynthSpec
    roots: tuple[str, ...]
    affix_slots: tuple[tuple[str, ...], ...]  # one inventory per slot (fusional: one)


def _capacity(n_chars: int, lo: int, hi: int) -> int:
    return sum(n_chars**k for k in range(lo, hi + 1))


def _distinct_strings(
    rng: random.Random, count: int, len_range: tuple[int, int], alphabet: Sequence[str]
) -> list[str]:
    lo, hi = len_range
    seen: set[str] = set()
    out: list[str] = []
    attempts = 0
    while len(out) < count and attempts < 200 * count + 1000:
        attempts += 1
        length = rng.randint(lo, hi)
        s = "".join(rng.choice(alphabet) for _ in range(length))
        if s not in seen:
            seen.add(s)
            out.append(s)
    if len(out) < count:
        # Rejection stalled near capacity; fall back to exhaustive enumeration.
        cap = _capacity(len(set(alphabet)), lo, hi)
        if cap > _ENUM_LIMIT:
            raise ConfigError("cannot draw enough distinct strings; enlarge the alphabet")
        pool = sorted(_enumerate_strings(sorted(set(alphabet)), lo, hi) - seen)
        out.extend(rng.sample(pool, count - len(out)))
    return out


def _enumerate_strings(alphabet: list[str], lo: int, hi: int) -> set[str]:
    level = [""]
    result: set[str] = set()
    for length in range(1, hi + 1):
        level = [s + c for s in level for c in alphabet]
        if length >= lo:
            result.update(level)
    return result


def generate(
    spec: SynthSpec,
    n_words: int,
    words_per_line: int = 10,
    lang: str | None = None,
) -> SynthCorpus:
    """Draw a corpus of ``n_words`` words plus gold boundaries, seed-determined.

    A surface form that arises from two different root/affix splits keeps the
    boundary of its first composition, so every word form has exactly one gold
    boundary and an oracle splitter is well defined.
    """
    if n_words < 1:
        raise InputError(f"n_words must be >= 1, got {n_words}")
    if words_per_line < 1:
        raise InputError(f"words_per_line must be >= 1, got {words_per_line}")
    if lang is None:
        lang = "art_agg" if spec.typology == AGGLUTINATIVE else "art_fus"
    rng = random.Random(spec.seed)

    roots = _distinct_strings(rng, spec.n_roots, spec.root_len_range, spec.alphabet)
    if spec.typology == AGGLUTINATIVE:
        slots = tuple(
            tuple(_distinct_strings(rng, spec.n_affixes_per_slot, spec.affix_len_range, spec.alphabet))
            for _ in range(spec.n_slots)
        )
    else:
        slots = (
            tuple(_distinct_strings(rng, spec.paradigm_size, spec.affix_len_range, spec.alphabet)),
        )

    weights = [1.0 / (rank**spec.zipf_s) for rank in range(1, spec.n_roots + 1)]
    boundary_of: dict[str, int] = {}
    gold: list[MorphItem] = []
    words: list[str] = []
    for _ in range(n_words):
        root = rng.choices(roots, weights=weights)[0]
        parts = [root] + [slot[rng.randrange(len(slot))] for slot in slots]
        word = "".join(parts)
        words.append(word)
        if word not in boundary_of:
            boundary_of[word] = len(root)
            gold.append(MorphItem(word=word, boundary=len(root), lang=lang, source="synthetic"))

    lines = tuple(
        " ".join(words[i : i + words_per_line]) for i in range(0, len(words), words_per_line)
    )
    return SynthCorpus(
        lines=lines, gold=tuple(gold), spec=spec, roots=tuple(roots), affix_slots=slots
    )


def expected_word_length(spec: SynthSpec) -> float:
    """Closed-form expected surface length under the generator."""
    root_mean = sum(spec.root_len_range) / 2.0
    affix_mean = sum(spec.affix_len_range) / 2.0
    slots = spec.n_slots if spec.typology == AGGLUTINATIVE else 1
    return root_mean + slots * affix_mean


def gold_splitter(corpus: SynthCorpus) -> Callable[[str], Segmentation]:
    """Oracle segmenter cutting every known word at its gold boundary."""
    boundary_of = {item.word: item.boundary for item in corpus.gold}

    def split(word: str) -> Segmentation:
        b = boundary_of.get(word)
        if b is None:
            raise InputError(f"word {word!r} not in corpus gold table")
        return Segmentation.from_tokens(word, (word[:b], word[b:]))

    return split
