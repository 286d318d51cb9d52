"""Byte premiums and byte-budget corpus scaling.

The byte premium of a language against a pivot is the ratio of UTF-8 byte
counts of a content-matched, line-aligned text pair (newlines excluded).
Scaling a monolingual corpus to a byte budget multiplies the base budget by
the premium and takes the greedy line prefix that fits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .dataset_ingest import ParallelCorpus
from .errors import InputError


@dataclass(frozen=True)
class BytePremium:
    lang: str
    pivot_lang: str
    ratio: float
    lang_bytes: int
    pivot_bytes: int


def line_bytes(line: str) -> int:
    return len(line.encode("utf-8"))


def compute_byte_premium(corpus: ParallelCorpus, lang: str, pivot: str) -> BytePremium:
    """UTF-8 byte ratio of ``lang`` against ``pivot`` over parallel lines."""
    for code in (lang, pivot):
        if code not in corpus.lines:
            raise InputError(f"language {code!r} not in parallel corpus {sorted(corpus.langs)}")
    lb = sum(line_bytes(l) for l in corpus.lines[lang])
    pb = sum(line_bytes(l) for l in corpus.lines[pivot])
    if pb == 0:
        raise InputError(f"pivot language {pivot!r} has zero bytes")
    return BytePremium(lang=lang, pivot_lang=pivot, ratio=lb / pb, lang_bytes=lb, pivot_bytes=pb)


def scale_corpus(
    lines: Sequence[str],
    premium: BytePremium | float,
    base_budget_bytes: int,
    seed: int | None = None,
    shuffle: bool = False,
) -> list[str]:
    """Greedy line prefix under ``round(base_budget_bytes * ratio)`` bytes.

    Lines are taken in order (after an optional seeded shuffle) and the prefix
    stops at the first line that would exceed the target, so corpora stay
    line-aligned. ``round`` is Python's banker's rounding. The emitted byte
    count is <= target and > target - max line bytes.
    """
    if not lines:
        raise InputError("empty input corpus")
    if base_budget_bytes <= 0:
        raise InputError(f"base_budget_bytes must be > 0, got {base_budget_bytes}")
    ratio = premium.ratio if isinstance(premium, BytePremium) else float(premium)
    if ratio <= 0:
        raise InputError(f"premium ratio must be > 0, got {ratio}")
    target = round(base_budget_bytes * ratio)
    order = list(lines)
    if shuffle:
        random.Random(seed).shuffle(order)
    out: list[str] = []
    total = 0
    for line in order:
        nb = line_bytes(line)
        if total + nb > target:
            break
        out.append(line)
        total += nb
    return out
