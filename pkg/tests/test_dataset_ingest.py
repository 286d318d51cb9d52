from __future__ import annotations

import pytest

from morphalign.dataset_ingest import (
    MAX_ITEMS,
    MIN_ITEMS,
    ConlluToken,
    ParallelCorpus,
    derive_items,
    finalize_dataset,
    parse_conllu,
    parse_unimorph,
    read_parallel,
)
from morphalign.errors import DatasetTooSmall, FormatError, InputError
from morphalign.morphscore import MorphItem


def conllu_line(idx, form, lemma, upos="NOUN", feats="_"):
    return "\t".join([str(idx), form, lemma, upos, "_", feats, "0", "root", "_", "_"])


class TestParseConllu:
    def test_reads_form_and_lemma(self, tmp_path):
        path = tmp_path / "t.conllu"
        path.write_text("# sent_id = 1\n" + conllu_line(1, "books", "book") + "\n\n")
        tokens = parse_conllu(path)
        assert tokens == [ConlluToken("books", "book", "NOUN", "_")]

    def test_skips_ranges_and_empty_nodes(self, tmp_path):
        path = tmp_path / "t.conllu"
        path.write_text(
            "\n".join(
                [
                    conllu_line("3-4", "du", "_"),
                    conllu_line("3", "de", "de"),
                    conllu_line("5.1", "elided", "elide"),
                    conllu_line(6, "cats", "cat"),
                ]
            )
            + "\n"
        )
        forms = [t.form for t in parse_conllu(path)]
        assert forms == ["de", "cats"]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.conllu"
        path.write_text("")
        assert parse_conllu(path) == []

    def test_bad_column_count_reports_line(self, tmp_path):
        path = tmp_path / "bad.conllu"
        path.write_text(conllu_line(1, "ok", "ok") + "\n1\tonly\tthree\n")
        with pytest.raises(FormatError, match=":2:"):
            parse_conllu(path)

    def test_missing_lemma_skipped(self, tmp_path):
        path = tmp_path / "t.conllu"
        path.write_text(conllu_line(1, "word", "_") + "\n")
        assert parse_conllu(path) == []


class TestDeriveItems:
    def test_suffixed_form_yields_boundary_at_lemma_end(self):
        items = derive_items([ConlluToken("books", "book", "NOUN", "_")], "eng_latn")
        assert items == [MorphItem("books", 4, "eng_latn", "ud")]

    def test_suppletion_dropped(self):
        assert derive_items([ConlluToken("ran", "run", "VERB", "_")], "eng_latn") == []

    def test_identical_form_dropped(self):
        assert derive_items([ConlluToken("book", "book", "NOUN", "_")], "eng_latn") == []

    def test_case_sensitive_prefix(self):
        assert derive_items([ConlluToken("Books", "book", "NOUN", "_")], "eng_latn") == []


class TestParseUnimorph:
    def test_prefix_rule_row(self, tmp_path):
        path = tmp_path / "u.tsv"
        path.write_text("tarla\ttarlaları\tN;PL;ACC\n")
        items = parse_unimorph(path, "tur_latn")
        assert items == [MorphItem("tarlaları", 5, "tur_latn", "unimorph")]

    def test_suppletive_row_dropped(self, tmp_path):
        path = tmp_path / "u.tsv"
        path.write_text("go\twent\tV;PST\n")
        assert parse_unimorph(path, "eng_latn") == []

    def test_explicit_segmentation_column(self, tmp_path):
        path = tmp_path / "u.tsv"
        path.write_text("aldi\taldiz\tN;INS\taldi|z\n")
        items = parse_unimorph(path, "eus_latn")
        assert items == [MorphItem("aldiz", 4, "eus_latn", "unimorph")]

    def test_multi_pipe_uses_leftmost_cut(self, tmp_path):
        path = tmp_path / "u.tsv"
        path.write_text("tarla\ttarlaları\tN;PL;ACC\ttarla|lar|ı\n")
        items = parse_unimorph(path, "tur_latn")
        assert items[0].boundary == 5
        assert items[0].word == "tarlaları"

    def test_malformed_row_rejected(self, tmp_path):
        path = tmp_path / "u.tsv"
        path.write_text("lemma\tform\n")
        with pytest.raises(FormatError, match=":1:"):
            parse_unimorph(path, "eng_latn")

    def test_empty_segmentation_side_rejected(self, tmp_path):
        path = tmp_path / "u.tsv"
        path.write_text("x\txz\tN\t|xz\n")
        with pytest.raises(FormatError):
            parse_unimorph(path, "eng_latn")


def _items(n: int, lang: str = "xxx_latn") -> list[MorphItem]:
    return [MorphItem(f"word{i:05d}x", 4, lang) for i in range(n)]


class TestFinalizeDataset:
    def test_cap_at_2000_and_seed_determinism(self):
        items = _items(2500)
        a = finalize_dataset(items, seed=7)
        b = finalize_dataset(items, seed=7)
        assert len(a) == MAX_ITEMS
        assert a == b
        c = finalize_dataset(items, seed=8)
        assert c != a  # different sample under a different seed

    def test_floor_of_100(self):
        with pytest.raises(DatasetTooSmall) as exc:
            finalize_dataset(_items(99), seed=0)
        assert exc.value.count == 99
        assert exc.value.minimum == MIN_ITEMS
        assert finalize_dataset(_items(100), seed=0) == sorted(
            _items(100), key=lambda it: (it.lang, it.word, it.boundary)
        )

    def test_dedup_on_word_boundary(self):
        base = _items(150)
        items = base + base[:30]
        assert len(finalize_dataset(items, seed=0)) == 150

    def test_leftmost_boundary_collapse(self):
        base = _items(120)
        extra = [MorphItem(base[0].word, 2, base[0].lang), MorphItem(base[0].word, 6, base[0].lang)]
        final = finalize_dataset(base + extra, seed=0)
        kept = [it for it in final if it.word == base[0].word]
        assert kept == [MorphItem(base[0].word, 2, base[0].lang)]

    def test_idempotent(self):
        items = _items(2400)
        once = finalize_dataset(items, seed=3)
        twice = finalize_dataset(once, seed=3)
        assert once == twice

    def test_order_insensitive(self):
        import random

        items = _items(2400)
        shuffled = items[:]
        random.Random(1).shuffle(shuffled)
        assert finalize_dataset(items, seed=5) == finalize_dataset(shuffled, seed=5)


class TestParallel:
    def test_read_parallel_line_counts(self, tmp_path):
        (tmp_path / "en.txt").write_text("one\ntwo\n")
        (tmp_path / "tr.txt").write_text("bir\niki\n")
        corpus = read_parallel({"eng_latn": tmp_path / "en.txt", "tur_latn": tmp_path / "tr.txt"})
        assert corpus.line_count == 2
        assert corpus.lines["tur_latn"] == ("bir", "iki")

    def test_misaligned_rejected(self, tmp_path):
        (tmp_path / "en.txt").write_text("one\ntwo\n")
        (tmp_path / "tr.txt").write_text("bir\n")
        with pytest.raises(FormatError):
            read_parallel({"eng_latn": tmp_path / "en.txt", "tur_latn": tmp_path / "tr.txt"})

    def test_corpus_invariant_enforced(self):
        with pytest.raises(InputError):
            ParallelCorpus(langs=("a", "b"), lines={"a": ("x",), "b": ("x", "y")})
