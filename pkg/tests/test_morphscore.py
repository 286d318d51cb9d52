from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphalign.errors import FormatError, InputError, StatError
from morphalign.morphscore import (
    CORRECT,
    EXCLUDED,
    INCORRECT,
    LENIENT,
    MorphItem,
    MorphScoreReport,
    compare_groups,
    morphscore,
    read_dataset,
    score_item,
    write_dataset,
    write_reports_csv,
)
from morphalign.tok_core import Segmentation

from conftest import make_segmenter


def seg(word: str, *tokens: str) -> Segmentation:
    return Segmentation.from_tokens(word, tokens)


class TestScoreItem:
    # the four worked examples: each gold cut against both tokenizations
    def test_basque_aldiz(self):
        item = MorphItem("aldiz", 4, "eus_latn")  # aldi + z
        assert score_item(seg("aldiz", "al", "diz"), item) == INCORRECT
        assert score_item(seg("aldiz", "aldi", "z"), item) == CORRECT

    def test_croatian_suucesnika_incorrect_despite_many_boundaries(self):
        item = MorphItem("suučesnika", 9, "hrv_latn")  # suučesnik + a
        assert score_item(seg("suučesnika", "su", "uče", "s", "nika"), item) == INCORRECT
        assert score_item(seg("suučesnika", "su", "u", "če", "s", "nika"), item) == INCORRECT

    def test_icelandic_samrads(self):
        item = MorphItem("samráðs", 6, "isl_latn")  # samráð + s
        assert score_item(seg("samráðs", "samráð", "s"), item) == CORRECT
        assert score_item(seg("samráðs", "samráðs"), item) == EXCLUDED
        assert score_item(seg("samráðs", "samráðs"), item, LENIENT) == CORRECT

    def test_greek_adrianis(self):
        item = MorphItem("Αδριανής", 7, "ell_grek")
        word = item.word
        assert score_item(seg(word, "Α", "δ", "ριανής"), item) == INCORRECT
        assert score_item(seg(word, "Α", "δρ", "ιανή", "ς"), item) == CORRECT

    def test_correct_regardless_of_other_boundaries(self):
        item = MorphItem("abcdef", 3, "xxx_latn")
        assert score_item(seg("abcdef", "a", "bc", "d", "ef"), item) == CORRECT

    def test_word_mismatch_rejected(self):
        item = MorphItem("abc", 1, "xxx_latn")
        with pytest.raises(InputError):
            score_item(seg("abd", "ab", "d"), item)

    def test_bad_mode_rejected(self):
        item = MorphItem("abc", 1, "xxx_latn")
        with pytest.raises(InputError):
            score_item(seg("abc", "a", "bc"), item, "loose")


class TestMorphItem:
    def test_boundary_must_be_interior(self):
        with pytest.raises(InputError):
            MorphItem("abc", 0, "xxx_latn")
        with pytest.raises(InputError):
            MorphItem("abc", 3, "xxx_latn")

    def test_whitespace_rejected(self):
        with pytest.raises(InputError):
            MorphItem("a b", 1, "xxx_latn")


ITEMS4 = [
    MorphItem("abcd", 2, "xxx_latn"),
    MorphItem("efgh", 2, "xxx_latn"),
    MorphItem("ijkl", 2, "xxx_latn"),
    MorphItem("mnop", 2, "xxx_latn"),
]

# outcomes: correct, incorrect, excluded, correct
TABLE4 = {
    "abcd": ["ab", "cd"],
    "efgh": ["e", "fgh"],
    "ijkl": ["ijkl"],
    "mnop": ["mn", "o", "p"],
}


class TestMorphscore:
    def test_oracle_splitter_scores_one(self):
        def oracle(word: str) -> Segmentation:
            return Segmentation.from_tokens(word, (word[:2], word[2:]))

        rep = morphscore(oracle, ITEMS4)
        assert rep.score_strict == 1.0
        assert rep.score_lenient == 1.0
        assert rep.n_excluded_single_token == 0

    def test_adversarial_splitter_scores_zero(self):
        def off_by_one(word: str) -> Segmentation:
            return Segmentation.from_tokens(word, (word[:3], word[3:]))

        rep = morphscore(off_by_one, ITEMS4)
        assert rep.score_strict == 0.0

    def test_mixed_outcomes_arithmetic(self):
        rep = morphscore(make_segmenter(TABLE4), ITEMS4)
        assert rep.n_total == 4
        assert rep.n_excluded_single_token == 1
        assert rep.n_scored == 3
        assert rep.score_strict == pytest.approx(2 / 3)
        assert rep.score_lenient == pytest.approx(3 / 4)
        assert rep.one_token_count == 1
        assert rep.one_token_prop == pytest.approx(1 / 4)

    def test_fertility_counts_all_items(self):
        rep = morphscore(make_segmenter(TABLE4), ITEMS4)
        # token counts: 2, 2, 1, 3
        assert rep.mean_fertility == pytest.approx(8 / 4)
        assert rep.mean_word_len == pytest.approx(4.0)

    def test_all_excluded_flags_nan_not_zero(self):
        whole = make_segmenter({it.word: [it.word] for it in ITEMS4})
        rep = morphscore(whole, ITEMS4)
        assert rep.n_scored == 0
        assert math.isnan(rep.score_strict)
        assert rep.score_lenient == 1.0

    def test_empty_items_rejected(self):
        with pytest.raises(InputError):
            morphscore(make_segmenter({}), [])

    def test_mixed_languages_rejected(self):
        items = [MorphItem("abcd", 2, "aaa_latn"), MorphItem("efgh", 2, "bbb_latn")]
        with pytest.raises(InputError):
            morphscore(make_segmenter(TABLE4), items)

    def test_permutation_invariance(self):
        rng = random.Random(5)
        shuffled = ITEMS4[:]
        rng.shuffle(shuffled)
        a = morphscore(make_segmenter(TABLE4), ITEMS4)
        b = morphscore(make_segmenter(TABLE4), shuffled)
        assert a == b


@settings(max_examples=100, deadline=None)
@given(cut=st.integers(min_value=1, max_value=5), extra=st.booleans())
def test_lenient_never_below_strict_share(cut, extra):
    # lenient >= strict * n_scored / n_total; equal when nothing is excluded
    words = ["abcdef", "ghijkl", "mnopqr", "stuvwx"]
    table = {
        words[0]: [words[0][:cut], words[0][cut:]],
        words[1]: [words[1]],
        words[2]: [words[2][:3], words[2][3:]],
        words[3]: [words[3][:1], words[3][1:]] if extra else [words[3]],
    }
    items = [MorphItem(w, 3, "xxx_latn") for w in words]
    rep = morphscore(make_segmenter(table), items)
    if rep.n_scored:
        assert rep.score_lenient >= rep.score_strict * rep.n_scored / rep.n_total - 1e-12
    if rep.n_excluded_single_token == 0:
        assert rep.score_lenient == pytest.approx(rep.score_strict)


@settings(max_examples=100, deadline=None)
@given(n_tokens=st.integers(min_value=1, max_value=6))
def test_excluded_iff_single_token(n_tokens):
    word = "abcdefgh"
    cuts = list(range(1, n_tokens))
    tokens = [word[i:j] for i, j in zip([0] + cuts, cuts + [len(word)])]
    item = MorphItem(word, 7, "xxx_latn")  # boundary no split below reaches
    outcome = score_item(Segmentation.from_tokens(word, tokens), item)
    assert (outcome == EXCLUDED) == (len(tokens) == 1)


def _report(lang: str, score: float) -> MorphScoreReport:
    return MorphScoreReport(
        lang=lang, n_total=10, n_excluded_single_token=0, n_scored=10,
        score_strict=score, score_lenient=score, mean_fertility=2.0,
        mean_word_len=5.0, one_token_count=0, one_token_prop=0.0,
    )


class TestCompareGroups:
    PROFILE = {
        "aaa": "agglutinative", "bbb": "agglutinative", "ccc": "agglutinative",
        "ddd": "fusional", "eee": "fusional", "fff": "fusional",
    }

    def test_identical_groups_give_t_zero(self):
        reports = [_report(l, 0.5) for l in self.PROFILE]
        cmp = compare_groups(reports, self.PROFILE)
        assert cmp.t == 0.0
        assert cmp.p == 1.0

    def test_hand_welch_fixture(self):
        scores = {"aaa": 0.9, "bbb": 0.8, "ddd": 0.1, "eee": 0.2}
        profile = {k: self.PROFILE[k] for k in scores}
        reports = [_report(l, s) for l, s in scores.items()]
        cmp = compare_groups(reports, profile)
        assert cmp.group_a == "agglutinative"
        assert cmp.t == pytest.approx(9.899494936611665, abs=1e-10)
        assert cmp.df == pytest.approx(2.0, abs=1e-10)
        assert cmp.p == pytest.approx(0.0100505063388335, abs=1e-10)

    def test_undersized_group_rejected(self):
        reports = [_report("aaa", 0.9), _report("ddd", 0.1), _report("eee", 0.2)]
        with pytest.raises(StatError):
            compare_groups(reports, self.PROFILE)

    def test_nan_scores_rejected(self):
        reports = [_report(l, 0.5) for l in self.PROFILE]
        reports[0] = _report("aaa", float("nan"))
        with pytest.raises(StatError):
            compare_groups(reports, self.PROFILE)

    def test_missing_profile_entry_rejected(self):
        with pytest.raises(InputError):
            compare_groups([_report("zzz", 0.5)], self.PROFILE)


class TestDatasetIO:
    def test_round_trip(self, tmp_path):
        items = [
            MorphItem("tarlaları", 5, "tur_latn", "unimorph"),
            MorphItem("books", 4, "eng_latn", "ud"),
        ]
        path = tmp_path / "d.tsv"
        write_dataset(items, path)
        assert read_dataset(path) == items

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("word\tcut\tlang\tsource\nabc\t1\txxx\tud\n")
        with pytest.raises(FormatError):
            read_dataset(path)

    def test_bad_boundary_reports_line(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("word\tboundary\tlang\tsource\nabc\tone\txxx\tud\n")
        with pytest.raises(FormatError, match=":2:"):
            read_dataset(path)

    def test_report_csv_columns(self, tmp_path):
        path = tmp_path / "r.csv"
        write_reports_csv([_report("eng_latn", 0.78)], path)
        header, row = path.read_text().splitlines()
        assert header.startswith("lang,n_total,")
        assert row.startswith("eng_latn,10,")
