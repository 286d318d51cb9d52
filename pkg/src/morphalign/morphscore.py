"""Morphological alignment scoring for subword tokenizers.

A word scores 1 when the tokenizer places a token boundary exactly at the
annotated morpheme boundary, regardless of other token boundaries, and 0
otherwise. Words the tokenizer keeps whole (no boundaries at all) are
excluded in strict mode and counted correct in lenient mode. The per-language
score is the mean of the assigned values.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .errors import FormatError, InputError, StatError
from .stats import welch_t
from .tok_core import Segmentation, TokenizerModel, encode_word

CORRECT = "correct"
INCORRECT = "incorrect"
EXCLUDED = "excluded"

STRICT = "strict"
LENIENT = "lenient"

VALID_SOURCES = frozenset({"ud", "unimorph", "synthetic"})

Segmenter = Callable[[str], Segmentation]

DATASET_COLUMNS = ("word", "boundary", "lang", "source")

REPORT_COLUMNS = (
    "lang",
    "n_total",
    "n_excluded_single_token",
    "n_scored",
    "score_strict",
    "score_lenient",
    "mean_fertility",
    "mean_word_len",
    "one_token_count",
    "one_token_prop",
)


@dataclass(frozen=True)
class MorphItem:
    """One evaluation item: a word form plus its gold boundary (char index)."""

    word: str
    boundary: int
    lang: str
    source: str = "ud"

    def __post_init__(self):
        if any(ch.isspace() for ch in self.word):
            raise InputError(f"item word {self.word!r} contains whitespace")
        if not 0 < self.boundary < len(self.word):
            raise InputError(
                f"boundary {self.boundary} not interior to word {self.word!r} "
                f"(length {len(self.word)})"
            )
        if self.source not in VALID_SOURCES:
            raise InputError(f"source must be one of {sorted(VALID_SOURCES)}, got {self.source!r}")


@dataclass(frozen=True)
class MorphScoreReport:
    lang: str
    n_total: int
    n_excluded_single_token: int
    n_scored: int
    score_strict: float  # NaN when every item was excluded
    score_lenient: float
    mean_fertility: float
    mean_word_len: float
    one_token_count: int
    one_token_prop: float


@dataclass(frozen=True)
class GroupComparison:
    group_a: str
    group_b: str
    n_a: int
    n_b: int
    mean_a: float
    mean_b: float
    t: float
    df: float
    p: float


def score_item(seg: Segmentation, item: MorphItem, mode: str = STRICT) -> str:
    """Score one segmentation against one item: correct/incorrect/excluded."""
    if mode not in (STRICT, LENIENT):
        raise InputError(f"mode must be {STRICT!r} or {LENIENT!r}, got {mode!r}")
    if seg.word != item.word:
        raise InputError(f"segmentation word {seg.word!r} != item word {item.word!r}")
    if not seg.boundaries:
        return EXCLUDED if mode == STRICT else CORRECT
    return CORRECT if item.boundary in seg.boundaries else INCORRECT


def _as_segmenter(tokenizer: TokenizerModel | Segmenter) -> Segmenter:
    if isinstance(tokenizer, TokenizerModel):
        return lambda word: encode_word(tokenizer, word)
    return tokenizer


def morphscore(
    tokenizer: TokenizerModel | Segmenter, items: Sequence[MorphItem]
) -> MorphScoreReport:
    """Score a tokenizer over one language's items.

    ``tokenizer`` is a TokenizerModel or any word -> Segmentation callable
    (the injection point for mock and oracle tokenizers). Fertility and word
    length are computed over all items, one-token words included. With every
    item excluded, score_strict is NaN and n_scored is 0 rather than a silent
    zero.
    """
    if not items:
        raise InputError("no items to score")
    langs = {it.lang for it in items}
    if len(langs) > 1:
        raise InputError(f"items span multiple languages: {sorted(langs)}")
    segment = _as_segmenter(tokenizer)

    n_excluded = 0
    n_correct_scored = 0
    token_total = 0
    char_total = 0
    for item in items:
        seg = segment(item.word)
        token_total += len(seg.tokens)
        char_total += len(item.word)
        outcome = score_item(seg, item, STRICT)
        if outcome == EXCLUDED:
            n_excluded += 1
        elif outcome == CORRECT:
            n_correct_scored += 1

    n_total = len(items)
    n_scored = n_total - n_excluded
    score_strict = n_correct_scored / n_scored if n_scored else float("nan")
    score_lenient = (n_correct_scored + n_excluded) / n_total
    return MorphScoreReport(
        lang=items[0].lang,
        n_total=n_total,
        n_excluded_single_token=n_excluded,
        n_scored=n_scored,
        score_strict=score_strict,
        score_lenient=score_lenient,
        mean_fertility=token_total / n_total,
        mean_word_len=char_total / n_total,
        one_token_count=n_excluded,
        one_token_prop=n_excluded / n_total,
    )


def compare_groups(
    reports: Sequence[MorphScoreReport],
    profile: Mapping[str, str],
    metric: str = "score_strict",
) -> GroupComparison:
    """Welch t-test between the two morphological-type groups of a profile.

    Groups are ordered alphabetically (so agglutinative precedes fusional in
    the usual binary profile); each needs at least two member languages.
    """
    groups: dict[str, list[float]] = {}
    for rep in reports:
        if rep.lang not in profile:
            raise InputError(f"no morphological type for language {rep.lang!r}")
        value = getattr(rep, metric)
        if isinstance(value, float) and math.isnan(value):
            raise StatError(f"report for {rep.lang!r} has undefined {metric}")
        groups.setdefault(profile[rep.lang], []).append(float(value))
    if len(groups) != 2:
        raise StatError(f"expected exactly 2 groups, got {sorted(groups)}")
    name_a, name_b = sorted(groups)
    a, b = groups[name_a], groups[name_b]
    if len(a) < 2 or len(b) < 2:
        raise StatError(
            f"each group needs >= 2 members, got {name_a}:{len(a)} {name_b}:{len(b)}"
        )
    res = welch_t(a, b)
    return GroupComparison(
        group_a=name_a, group_b=name_b, n_a=len(a), n_b=len(b),
        mean_a=res.mean_a, mean_b=res.mean_b, t=res.t, df=res.df, p=res.p,
    )


def read_dataset(path: str | Path) -> list[MorphItem]:
    """Read a morpheme-boundary dataset TSV (word, boundary, lang, source)."""
    path = Path(path)
    items: list[MorphItem] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = next(reader, None)
        if header is None:
            raise FormatError(f"{path}: empty dataset file")
        if tuple(header) != DATASET_COLUMNS:
            raise FormatError(
                f"{path}: header must be {list(DATASET_COLUMNS)}, got {header}"
            )
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != len(DATASET_COLUMNS):
                raise FormatError(f"{path}:{lineno}: expected {len(DATASET_COLUMNS)} columns")
            word, boundary_s, lang, source = row
            try:
                boundary = int(boundary_s)
            except ValueError as exc:
                raise FormatError(f"{path}:{lineno}: boundary {boundary_s!r} is not an integer") from exc
            try:
                items.append(MorphItem(word=word, boundary=boundary, lang=lang, source=source))
            except InputError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return items


def write_dataset(items: Iterable[MorphItem], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(DATASET_COLUMNS)
        for it in items:
            writer.writerow([it.word, it.boundary, it.lang, it.source])


def write_reports_csv(reports: Iterable[MorphScoreReport], path: str | Path) -> None:
    """One CSV row per language with every report field."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for rep in reports:
            writer.writerow([getattr(rep, col) for col in REPORT_COLUMNS])
