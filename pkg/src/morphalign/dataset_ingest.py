"""Build morpheme-boundary datasets from CoNLL-U and UniMorph files.

Boundary derivation uses a case-sensitive lemma-prefix rule: a (form, lemma)
pair yields an item only when the form is the lemma plus a non-empty suffix,
with the boundary at the end of the lemma. Pairs showing umlaut or suppletion
fail the prefix check and are dropped. Prefixing morphology is never derived
automatically; only explicit segmentations (``stem|affix``) yield boundaries
elsewhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DatasetTooSmall, FormatError, InputError
from .morphscore import MorphItem

MAX_ITEMS = 2000
MIN_ITEMS = 100

# PRNG identifier recorded in run manifests so sampled datasets are
# reproducible across implementations.
SAMPLER_ID = "python-random-mt19937/sample"

_CONLLU_COLUMNS = 10


@dataclass(frozen=True)
class ConlluToken:
    form: str
    lemma: str
    upos: str
    feats: str


@dataclass(frozen=True)
class ParallelCorpus:
    """Content-matched, line-aligned text in several languages."""

    langs: tuple[str, ...]
    lines: dict[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "langs", tuple(self.langs))
        object.__setattr__(self, "lines", {k: tuple(v) for k, v in self.lines.items()})
        counts = {lang: len(self.lines[lang]) for lang in self.langs}
        if len(set(counts.values())) > 1:
            raise InputError(f"per-language line counts differ: {counts}")

    @property
    def line_count(self) -> int:
        return len(self.lines[self.langs[0]]) if self.langs else 0


def _is_missing(field: str) -> bool:
    return field in ("", "_")


def parse_conllu(path: str | Path) -> list[ConlluToken]:
    """Read word rows from a CoNLL-U file.

    Comment lines, multiword-token ranges (id contains ``-``) and empty nodes
    (id contains ``.``) are skipped, as are rows with a missing form or lemma.
    """
    path = Path(path)
    tokens: list[ConlluToken] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != _CONLLU_COLUMNS:
                raise FormatError(
                    f"{path}:{lineno}: expected {_CONLLU_COLUMNS} columns, got {len(cols)}"
                )
            token_id = cols[0]
            if "-" in token_id or "." in token_id:
                continue
            form, lemma = cols[1], cols[2]
            if _is_missing(form) or _is_missing(lemma):
                continue
            tokens.append(ConlluToken(form=form, lemma=lemma, upos=cols[3], feats=cols[5]))
    return tokens


def _prefix_item(form: str, lemma: str, lang: str, source: str) -> MorphItem | None:
    if form == lemma or not form.startswith(lemma):
        return None
    if any(ch.isspace() for ch in form):
        return None
    return MorphItem(word=form, boundary=len(lemma), lang=lang, source=source)


def derive_items(tokens: Iterable[ConlluToken], lang: str) -> list[MorphItem]:
    """Lemma-prefix rule over (form, lemma) pairs; never fails, only filters."""
    items = []
    for tok in tokens:
        item = _prefix_item(tok.form, tok.lemma, lang, "ud")
        if item is not None:
            items.append(item)
    return items


def parse_unimorph(path: str | Path, lang: str) -> list[MorphItem]:
    """Read ``lemma<TAB>form<TAB>features`` rows into items.

    Rows carrying an explicit segmentation column (``stem|affix``) use that
    cut directly (left-most pipe); other rows go through the lemma-prefix
    rule. Structurally malformed rows raise; filtered rows are dropped.
    """
    path = Path(path)
    items: list[MorphItem] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < 3:
                raise FormatError(f"{path}:{lineno}: expected >= 3 columns, got {len(cols)}")
            lemma, form = cols[0], cols[1]
            seg_col = cols[3] if len(cols) >= 4 else ""
            if "|" in seg_col:
                head, _, tail = seg_col.partition("|")
                if not head or not tail.replace("|", ""):
                    raise FormatError(
                        f"{path}:{lineno}: segmentation {seg_col!r} has an empty side"
                    )
                word = seg_col.replace("|", "")
                if any(ch.isspace() for ch in word):
                    continue
                items.append(
                    MorphItem(word=word, boundary=len(head), lang=lang, source="unimorph")
                )
                continue
            if _is_missing(form) or _is_missing(lemma):
                continue
            item = _prefix_item(form, lemma, lang, "unimorph")
            if item is not None:
                items.append(item)
    return items


def finalize_dataset(items: Sequence[MorphItem], seed: int) -> list[MorphItem]:
    """Dedup, collapse to left-most boundaries, and enforce dataset size rules.

    Words annotated with several boundaries keep only the left-most one.
    With more than 2000 surviving items a uniform seeded sample of exactly
    2000 is drawn (items are sorted first, so the result is independent of
    input order and the operation is idempotent). Fewer than 100 items raise
    DatasetTooSmall.
    """
    leftmost: dict[tuple[str, str], MorphItem] = {}
    for item in sorted(items, key=lambda it: (it.lang, it.word, it.boundary, it.source)):
        key = (item.lang, item.word)
        if key not in leftmost:
            leftmost[key] = item
    unique = sorted(leftmost.values(), key=lambda it: (it.lang, it.word, it.boundary))
    if len(unique) < MIN_ITEMS:
        raise DatasetTooSmall(len(unique), MIN_ITEMS)
    if len(unique) > MAX_ITEMS:
        rng = random.Random(seed)
        unique = sorted(
            rng.sample(unique, MAX_ITEMS), key=lambda it: (it.lang, it.word, it.boundary)
        )
    return unique


def read_lines(path: str | Path) -> list[str]:
    """Read one-sentence-per-line text, newline stripped."""
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh]


def read_parallel(paths: Mapping[str, str | Path]) -> ParallelCorpus:
    """Load a line-aligned parallel corpus from per-language files."""
    if not paths:
        raise InputError("no parallel files given")
    lines = {lang: tuple(read_lines(p)) for lang, p in paths.items()}
    counts = {lang: len(ls) for lang, ls in lines.items()}
    if len(set(counts.values())) > 1:
        raise FormatError(f"parallel files are not line-aligned: {counts}")
    return ParallelCorpus(langs=tuple(paths), lines=lines)
