"""Minimal deterministic subword tokenizer engine.

Implements BPE training and encoding, unigram-LM Viterbi encoding from a
supplied model, lossless decoding, and a documented JSON model format.
Character positions are always counted in Unicode scalar values, never bytes.

Conventions:

* Words are marked with a word-initial marker (default ``▁``). At
  initialization the marker is fused onto the first character, so the base
  symbol inventory contains both plain characters and marker-prefixed ones.
* ``specials`` is positional: ``[UNK, BOS, EOS, PAD]``. Only UNK/BOS/EOS are
  ever consulted; extra entries are carried through untouched.
* BPE merges are applied by learned priority (lowest rank first), which
  replays the learning order for any model trained by :func:`train_bpe`.
"""

from __future__ import annotations

import heapq
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ConfigError, FormatError, InputError

MARKER = "▁"  # ▁, the conventional word-initial marker
DEFAULT_SPECIALS = ("<unk>", "<s>", "</s>", "<pad>")

KIND_BPE = "bpe"
KIND_UNIGRAM = "unigram"

# Score assigned to single-character fallback tokens for characters the
# unigram vocabulary cannot cover. Large enough to lose against any real path.
_UNK_SCORE = -1e9


@dataclass(frozen=True)
class Segmentation:
    """One word's tokenization: marker-stripped tokens plus interior cut points.

    ``boundaries`` holds character indices b with 0 < b < len(word), each the
    number of Unicode scalar values preceding the cut.
    """

    word: str
    tokens: tuple[str, ...]
    boundaries: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "boundaries", frozenset(self.boundaries))
        if "".join(self.tokens) != self.word:
            raise InputError(
                f"tokens {list(self.tokens)!r} do not concatenate to word {self.word!r}"
            )
        if len(self.boundaries) != len(self.tokens) - 1:
            raise InputError("boundary count must be exactly len(tokens) - 1")
        for b in self.boundaries:
            if not 0 < b < len(self.word):
                raise InputError(f"boundary {b} not interior to word {self.word!r}")

    @classmethod
    def from_tokens(cls, word: str, tokens: Sequence[str]) -> "Segmentation":
        """Build a segmentation from marker-free tokens, deriving boundaries."""
        cuts = []
        pos = 0
        for tok in tokens[:-1]:
            pos += len(tok)
            cuts.append(pos)
        return cls(word=word, tokens=tuple(tokens), boundaries=frozenset(cuts))


@dataclass(frozen=True)
class TokenizerModel:
    """A trained subword vocabulary plus pre-tokenization config.

    Immutable after construction and safe to share across threads; derived
    lookup tables are built once in ``__post_init__``.
    """

    kind: str
    vocab: tuple[str, ...]
    merges: tuple[tuple[str, str], ...] = ()
    scores: tuple[float, ...] = ()
    marker: str = MARKER
    specials: tuple[str, ...] = DEFAULT_SPECIALS
    vocab_size_target: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vocab", tuple(self.vocab))
        object.__setattr__(self, "merges", tuple((l, r) for l, r in self.merges))
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        object.__setattr__(self, "specials", tuple(self.specials))
        if self.vocab_size_target == 0:
            object.__setattr__(self, "vocab_size_target", len(self.vocab))
        self._validate()
        ids = {tok: i for i, tok in enumerate(self.vocab)}
        object.__setattr__(self, "_ids", ids)
        object.__setattr__(self, "_specials_set", frozenset(self.specials))
        if self.kind == KIND_BPE:
            ranks = {pair: i for i, pair in enumerate(self.merges)}
            object.__setattr__(self, "_ranks", ranks)
            object.__setattr__(self, "_bpe_cache", {})
        else:
            regular = {
                tok: self.scores[i]
                for i, tok in enumerate(self.vocab)
                if tok not in self.specials
            }
            object.__setattr__(self, "_unigram_scores", regular)
            max_len = max((len(t) for t in regular), default=1)
            object.__setattr__(self, "_max_token_len", max_len)

    def _validate(self) -> None:
        if self.kind not in (KIND_BPE, KIND_UNIGRAM):
            raise ConfigError(f"kind must be '{KIND_BPE}' or '{KIND_UNIGRAM}', got {self.kind!r}")
        if not self.vocab:
            raise ConfigError("vocab is empty")
        if len(set(self.vocab)) != len(self.vocab):
            dupes = sorted({t for t in self.vocab if list(self.vocab).count(t) > 1})
            raise ConfigError(f"vocab entries are not unique: {dupes[:5]}")
        if len(self.marker) != 1:
            raise ConfigError(f"marker must be a single character, got {self.marker!r}")
        vocab_set = set(self.vocab)
        for sp in self.specials:
            if sp not in vocab_set:
                raise ConfigError(f"special token {sp!r} missing from vocab")
        if self.vocab_size_target < len(self.vocab):
            raise ConfigError(
                f"vocab has {len(self.vocab)} entries, above target {self.vocab_size_target}"
            )
        if self.kind == KIND_BPE:
            if self.scores:
                raise ConfigError("BPE models carry merges, not scores")
            for left, right in self.merges:
                if left + right not in vocab_set:
                    raise ConfigError(
                        f"merge ({left!r}, {right!r}) product {left + right!r} not in vocab"
                    )
        else:
            if self.merges:
                raise ConfigError("unigram models carry scores, not merges")
            if len(self.scores) != len(self.vocab):
                raise ConfigError(
                    f"scores length {len(self.scores)} != vocab length {len(self.vocab)}"
                )
            for tok, s in zip(self.vocab, self.scores):
                if not (math.isfinite(s) and s <= 0.0):
                    raise ConfigError(f"score for {tok!r} must be finite and <= 0, got {s}")

    def token_id(self, token: str) -> int | None:
        return self._ids.get(token)

    @property
    def unk_id(self) -> int | None:
        return self._ids.get(self.specials[0]) if len(self.specials) >= 1 else None

    @property
    def bos_id(self) -> int | None:
        return self._ids.get(self.specials[1]) if len(self.specials) >= 2 else None

    @property
    def eos_id(self) -> int | None:
        return self._ids.get(self.specials[2]) if len(self.specials) >= 3 else None


def train_bpe(
    corpus: Iterable[str],
    vocab_size_target: int,
    marker: str = MARKER,
    specials: Sequence[str] = DEFAULT_SPECIALS,
) -> TokenizerModel:
    """Learn a BPE vocabulary from whitespace pre-tokenized lines.

    Deterministic: the highest-count pair is merged at each step, ties broken
    by lexicographic order of the (left, right) token strings. The vocabulary
    grows by exactly one token per merge until ``vocab_size_target`` is
    reached or no adjacent pairs remain.
    """
    word_freqs: Counter[str] = Counter()
    for line in corpus:
        for w in line.split():
            word_freqs[w] += 1
    if not word_freqs:
        raise InputError("empty corpus: no words to train on")
    for w in word_freqs:
        if marker in w:
            raise InputError(f"corpus word {w!r} contains the marker character {marker!r}")

    chars = sorted({c for w in word_freqs for c in w})
    base_symbols = sorted(set(chars) | {marker + c for c in chars})
    vocab: list[str] = list(specials) + base_symbols
    if vocab_size_target < len(vocab):
        raise ConfigError(
            f"vocab_size_target {vocab_size_target} below base size "
            f"{len(vocab)} ({len(specials)} specials + {len(base_symbols)} alphabet symbols)"
        )

    seqs: dict[str, list[str]] = {w: [marker + w[0], *w[1:]] for w in word_freqs}
    counts: Counter[tuple[str, str]] = Counter()
    occ: dict[tuple[str, str], set[str]] = defaultdict(set)
    for w, seq in seqs.items():
        f = word_freqs[w]
        for pair in zip(seq, seq[1:]):
            counts[pair] += f
            occ[pair].add(w)

    heap = [(-c, l, r) for (l, r), c in counts.items()]
    heapq.heapify(heap)
    merges: list[tuple[str, str]] = []

    while len(vocab) < vocab_size_target and heap:
        neg, left, right = heapq.heappop(heap)
        pair = (left, right)
        if counts.get(pair, 0) != -neg:
            continue  # stale heap entry
        merges.append(pair)
        vocab.append(left + right)

        touched: set[tuple[str, str]] = set()
        for w in list(occ.get(pair, ())):
            seq = seqs[w]
            f = word_freqs[w]
            for p in zip(seq, seq[1:]):
                counts[p] -= f
                occ[p].discard(w)
                touched.add(p)
            new_seq = _merge_sequence(seq, pair)
            seqs[w] = new_seq
            for p in zip(new_seq, new_seq[1:]):
                counts[p] += f
                occ[p].add(w)
                touched.add(p)
        for p in touched:
            c = counts.get(p, 0)
            if c > 0:
                heapq.heappush(heap, (-c, p[0], p[1]))
            else:
                counts.pop(p, None)
                occ.pop(p, None)

    return TokenizerModel(
        kind=KIND_BPE,
        vocab=tuple(vocab),
        merges=tuple(merges),
        marker=marker,
        specials=tuple(specials),
        vocab_size_target=vocab_size_target,
    )


def _merge_sequence(seq: list[str], pair: tuple[str, str]) -> list[str]:
    """Replace every left-to-right occurrence of ``pair`` with its product."""
    merged = pair[0] + pair[1]
    out: list[str] = []
    i = 0
    while i < len(seq):
        if i + 1 < len(seq) and seq[i] == pair[0] and seq[i + 1] == pair[1]:
            out.append(merged)
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return out


def _bpe_word_tokens(model: TokenizerModel, word: str) -> list[str]:
    cache: dict = model._bpe_cache  # type: ignore[attr-defined]
    hit = cache.get(word)
    if hit is not None:
        return hit
    ranks: dict = model._ranks  # type: ignore[attr-defined]
    symbols = [model.marker + word[0], *word[1:]]
    while len(symbols) >= 2:
        best_rank = None
        best_pair = None
        for pair in zip(symbols, symbols[1:]):
            r = ranks.get(pair)
            if r is not None and (best_rank is None or r < best_rank):
                best_rank, best_pair = r, pair
        if best_pair is None:
            break
        symbols = _merge_sequence(symbols, best_pair)
    if len(cache) < 262144:
        cache[word] = symbols
    return symbols


def _unigram_word_tokens(model: TokenizerModel, word: str) -> list[str]:
    """Viterbi max-sum segmentation over all candidate token matches.

    Ties break toward fewer tokens, then the lexicographically smaller token
    sequence. Characters the vocabulary cannot cover become single-character
    fallback tokens (UNK-backed at id level).
    """
    scores: dict = model._unigram_scores  # type: ignore[attr-defined]
    max_len: int = model._max_token_len  # type: ignore[attr-defined]
    marker = model.marker
    n = len(word)

    # best[i]: (score, ntokens, tokens) of the best path covering word[:i]
    best: list[tuple[float, int, tuple[str, ...]] | None] = [None] * (n + 1)
    best[0] = (0.0, 0, ())
    for i in range(n):
        state = best[i]
        if state is None:
            continue
        score_i, ntok_i, toks_i = state
        candidates: list[tuple[int, str, float]] = []  # (next position, vocab token, score)
        limit = min(max_len, n - i)
        for length in range(1, limit + 1):
            piece = word[i : i + length]
            s = scores.get(piece)
            if s is not None:
                candidates.append((i + length, piece, s))
            if i == 0:
                s = scores.get(marker + piece)
                if s is not None:
                    candidates.append((length, marker + piece, s))
        if word[i] not in scores and (i > 0 or marker + word[i] not in scores):
            candidates.append((i + 1, word[i], _UNK_SCORE))
        for j, tok, s in candidates:
            cand = (score_i + s, ntok_i + 1, toks_i + (tok,))
            if best[j] is None or _path_better(cand, best[j]):
                best[j] = cand
    final = best[n]
    assert final is not None  # fallback candidates guarantee a full path
    return list(final[2])


def _path_better(a: tuple[float, int, tuple[str, ...]], b) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]


def _word_tokens(model: TokenizerModel, word: str) -> list[str]:
    """Vocab-level (marker-carrying) token strings for one word."""
    if model.kind == KIND_BPE:
        return _bpe_word_tokens(model, word)
    return _unigram_word_tokens(model, word)


def encode_word(model: TokenizerModel, word: str) -> Segmentation:
    """Segment one word; the marker is stripped before boundaries are derived,
    so boundaries index into the raw word."""
    if not word:
        raise InputError("cannot encode an empty word")
    if any(ch.isspace() for ch in word):
        raise InputError(f"word {word!r} contains whitespace")
    raw = _word_tokens(model, word)
    stripped = [
        tok[len(model.marker):] if tok.startswith(model.marker) else tok for tok in raw
    ]
    return Segmentation.from_tokens(word, stripped)


def encode_text(model: TokenizerModel, text: str, add_specials: bool = False) -> list[int]:
    """Encode whitespace pre-tokenized text to token ids.

    BOS/EOS are appended only when ``add_specials`` is set. Tokens absent from
    the vocabulary map to the UNK special.
    """
    ids: list[int] = []
    if add_specials:
        if model.bos_id is None or model.eos_id is None:
            raise ConfigError("model lacks BOS/EOS specials; cannot add_specials")
        ids.append(model.bos_id)
    for word in text.split():
        for tok in _word_tokens(model, word):
            tid = model.token_id(tok)
            if tid is None:
                tid = model.unk_id
                if tid is None:
                    raise InputError(f"token {tok!r} not in vocab and model has no UNK special")
            ids.append(tid)
    if add_specials:
        ids.append(model.eos_id)
    return ids


def decode(model: TokenizerModel, ids: Sequence[int]) -> str:
    """Reconstruct whitespace-normalized text; marker-initial tokens open a
    new word, specials are skipped."""
    specials = model._specials_set  # type: ignore[attr-defined]
    words: list[str] = []
    current: list[str] = []
    for i in ids:
        if not 0 <= i < len(model.vocab):
            raise InputError(f"token id {i} out of range for vocab of {len(model.vocab)}")
        tok = model.vocab[i]
        if tok in specials:
            continue
        if tok.startswith(model.marker):
            if current:
                words.append("".join(current))
            current = [tok[len(model.marker):]]
        else:
            current.append(tok)
    if current:
        words.append("".join(current))
    return " ".join(words)


def save_model(model: TokenizerModel, path: str | Path) -> None:
    payload: dict = {
        "kind": model.kind,
        "marker": model.marker,
        "specials": list(model.specials),
        "vocab": list(model.vocab),
    }
    if model.kind == KIND_BPE:
        payload["merges"] = [list(p) for p in model.merges]
    else:
        payload["scores"] = list(model.scores)
    payload["vocab_size_target"] = model.vocab_size_target
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


def _require(payload: dict, key: str, kind: type, path) -> object:
    if key not in payload:
        raise FormatError(f"{path}: missing field {key!r}")
    value = payload[key]
    if not isinstance(value, kind):
        raise FormatError(f"{path}: field {key!r} must be {kind.__name__}")
    return value


def load_model(path: str | Path) -> TokenizerModel:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read model file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(payload, dict):
        raise FormatError(f"{path}: model file must hold a JSON object")

    kind = _require(payload, "kind", str, path)
    marker = _require(payload, "marker", str, path)
    specials = _require(payload, "specials", list, path)
    vocab = _require(payload, "vocab", list, path)
    for i, tok in enumerate(vocab):
        if not isinstance(tok, str):
            raise FormatError(f"{path}: field 'vocab'[{i}] must be a string")
    merges: list = []
    scores: list = []
    if kind == KIND_BPE:
        merges = _require(payload, "merges", list, path)
        for i, m in enumerate(merges):
            if not (isinstance(m, list) and len(m) == 2 and all(isinstance(x, str) for x in m)):
                raise FormatError(f"{path}: field 'merges'[{i}] must be a 2-array of strings")
    elif kind == KIND_UNIGRAM:
        scores = _require(payload, "scores", list, path)
        for i, s in enumerate(scores):
            if not isinstance(s, (int, float)):
                raise FormatError(f"{path}: field 'scores'[{i}] must be a number")
    target = payload.get("vocab_size_target", 0)
    if not isinstance(target, int):
        raise FormatError(f"{path}: field 'vocab_size_target' must be an integer")
    try:
        return TokenizerModel(
            kind=kind,
            vocab=tuple(vocab),
            merges=tuple((l, r) for l, r in merges),
            scores=tuple(scores),
            marker=marker,
            specials=tuple(specials),
            vocab_size_target=target,
        )
    except ConfigError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def import_vocab_merges(
    vocab_path: str | Path,
    merges_path: str | Path | None = None,
    marker: str = MARKER,
    specials: Sequence[str] = DEFAULT_SPECIALS,
) -> TokenizerModel:
    """Build a model from plain-text vocab (and optional merges) files.

    Vocab lines hold ``token`` or ``token<TAB>score``; scored lines with no
    merges file produce a unigram model, otherwise a BPE model. Merges lines
    hold ``left right``; ``#``-prefixed lines are skipped.
    """
    vocab_path = Path(vocab_path)
    tokens: list[str] = []
    scores: list[float] = []
    scored = 0
    for lineno, line in enumerate(vocab_path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        tokens.append(parts[0])
        if len(parts) >= 2:
            try:
                scores.append(float(parts[1]))
            except ValueError as exc:
                raise FormatError(f"{vocab_path}:{lineno}: bad score {parts[1]!r}") from exc
            scored += 1
        else:
            scores.append(0.0)
    if not tokens:
        raise FormatError(f"{vocab_path}: no tokens")

    vocab = tuple(specials) + tuple(t for t in tokens if t not in set(specials))
    if merges_path is not None:
        merges: list[tuple[str, str]] = []
        merges_path = Path(merges_path)
        for lineno, line in enumerate(merges_path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise FormatError(f"{merges_path}:{lineno}: expected 'left right'")
            merges.append((parts[0], parts[1]))
        try:
            return TokenizerModel(
                kind=KIND_BPE, vocab=vocab, merges=tuple(merges),
                marker=marker, specials=tuple(specials),
            )
        except ConfigError as exc:
            raise FormatError(f"{merges_path}: {exc}") from exc
    if scored != len(tokens):
        raise FormatError(f"{vocab_path}: unigram import needs a score on every line")
    full_scores = (0.0,) * len(specials) + tuple(
        s for t, s in zip(tokens, scores) if t not in set(specials)
    )
    try:
        return TokenizerModel(
            kind=KIND_UNIGRAM, vocab=vocab, scores=full_scores,
            marker=marker, specials=tuple(specials),
        )
    except ConfigError as exc:
        raise FormatError(f"{vocab_path}: {exc}") from exc
