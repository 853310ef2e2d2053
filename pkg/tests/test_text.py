"""Tokenization, sentence splitting, and sliding-window segmentation."""

import random
import string

import pytest

from noteval import text
from noteval.errors import InvalidWindow
from noteval.text import Normalization, segment_sliding, split_sentences, tokenize


class TestTokenize:
    def test_lower_alnum_example(self):
        seq = tokenize("Back pain, 8 years.")
        assert seq.surfaces() == ["back", "pain", "8", "years"]

    def test_empty_text(self):
        assert len(tokenize("")) == 0
        assert tokenize("").surfaces() == []

    def test_punctuation_only(self):
        assert tokenize("?! -- ...").surfaces() == []

    def test_whitespace_mode_preserves_case(self):
        seq = tokenize("Back pain, 8 years.", Normalization.WHITESPACE_ONLY)
        assert seq.surfaces() == ["Back", "pain,", "8", "years."]

    def test_digits_kept(self):
        assert tokenize("BP 120/80 mmHg").surfaces() == ["bp", "120", "80", "mmhg"]

    def test_underscore_is_separator(self):
        # \w includes underscore; the alnum rule must not
        assert tokenize("a_b").surfaces() == ["a", "b"]

    def test_offsets_map_into_source(self):
        src = "Back pain, 8 years."
        for tok in tokenize(src):
            assert src[tok.start_char:tok.end_char].lower() == tok.surface

    def test_offsets_property_random(self):
        rng = random.Random(20240501)
        alphabet = string.ascii_letters + string.digits + " .,;:!?-()\n\t"
        for _ in range(100):
            src = "".join(rng.choice(alphabet) for _ in range(1000))
            seq = tokenize(src)
            prev_end = 0
            for tok in seq:
                assert prev_end <= tok.start_char < tok.end_char <= len(src)
                assert src[tok.start_char:tok.end_char].lower() == tok.surface
                assert tok.surface
                prev_end = tok.end_char

    def test_whitespace_mode_offsets_random(self):
        rng = random.Random(20240502)
        alphabet = string.ascii_letters + " \t\n"
        for _ in range(50):
            src = "".join(rng.choice(alphabet) for _ in range(400))
            seq = tokenize(src, Normalization.WHITESPACE_ONLY)
            assert seq.surfaces() == src.split()

    def test_sequence_records_mode(self):
        assert tokenize("a").normalization is Normalization.LOWER_ALNUM
        assert tokenize("a", Normalization.WHITESPACE_ONLY).normalization is Normalization.WHITESPACE_ONLY

    def test_indexing_and_iteration(self):
        seq = tokenize("one two three")
        assert seq[0].surface == "one"
        assert [t.surface for t in seq] == ["one", "two", "three"]
        assert len(seq) == 3


class TestSplitSentences:
    def test_two_sentences(self):
        src = "He is well. Follow up in 2 weeks."
        spans = split_sentences(src)
        assert len(spans) == 2
        assert src[slice(*spans[0])] == "He is well."
        assert src[slice(*spans[1])] == "Follow up in 2 weeks."

    def test_abbreviation_suppresses_split(self):
        assert len(split_sentences("Seen by Dr. Smith today.")) == 1

    def test_all_abbreviations(self):
        for abbr in ("Dr", "Mr", "Mrs", "Ms", "vs", "e.g", "i.e"):
            src = f"Seen by {abbr}. Smith today."
            assert len(split_sentences(src)) == 1, abbr

    def test_question_and_exclamation(self):
        assert len(split_sentences("Really? Yes! Fine.")) == 3

    def test_no_terminator(self):
        src = "patient stable overnight"
        assert split_sentences(src) == [(0, len(src))]

    def test_empty_and_blank(self):
        assert split_sentences("") == []
        assert split_sentences("   \n ") == []

    def test_terminator_without_following_space(self):
        # "." not followed by whitespace/end does not split
        assert len(split_sentences("Version 2.5 released. Done.")) == 2

    def test_whitespace_only_sentences_dropped(self):
        # a bare "." span is content and kept; whitespace-only spans are not
        assert len(split_sentences("Stable. . Discharged.")) == 3
        assert len(split_sentences("Stable.   ")) == 1
        assert len(split_sentences("Stable.  Discharged.")) == 2

    def test_hand_oracle_random(self):
        # independent split: scan terminators followed by space/end,
        # reject when the preceding word is an abbreviation
        abbrs = {"dr", "mr", "mrs", "ms", "vs", "e.g", "i.e"}
        rng = random.Random(20240503)
        words = ["pain", "Dr", "stable", "mg", "daily", "vs", "noted", "X"]
        for _ in range(50):
            n = rng.randint(1, 40)
            parts = []
            for _ in range(n):
                parts.append(rng.choice(words))
                parts.append(rng.choice([" ", ". ", "! ", "? ", " "]))
            src = "".join(parts).strip()

            expected = 0
            starts = [0]
            i = 0
            while i < len(src):
                ch = src[i]
                if ch in ".!?" and (i + 1 == len(src) or src[i + 1].isspace()):
                    j = i
                    while j > 0 and not src[j - 1].isspace():
                        j -= 1
                    word = src[j:i].lower().rstrip(".")
                    if not (ch == "." and word in abbrs):
                        if src[starts[-1]:i + 1].strip():
                            expected += 1
                        starts.append(i + 1)
                i += 1
            if src[starts[-1]:].strip():
                expected += 1
            assert len(split_sentences(src)) == expected, src

    def test_spans_are_stripped(self):
        src = "  He is well.   Follow up.  "
        for start, end in split_sentences(src):
            assert not src[start].isspace()
            assert not src[end - 1].isspace()


class TestSegmentSliding:
    def test_example_700(self):
        segs = segment_sliding(700, max_len=512, overlap=100)
        assert [(s.start, s.end) for s in segs] == [(0, 512), (412, 700)]
        assert [s.segment_index for s in segs] == [0, 1]

    def test_exact_fit(self):
        segs = segment_sliding(512, max_len=512, overlap=100)
        assert [(s.start, s.end) for s in segs] == [(0, 512)]

    def test_example_1030(self):
        segs = segment_sliding(1030, max_len=512, overlap=100)
        assert [(s.start, s.end) for s in segs] == [(0, 512), (412, 924), (824, 1030)]

    def test_short_text_single_segment(self):
        assert [(s.start, s.end) for s in segment_sliding(7)] == [(0, 7)]

    def test_invalid_window(self):
        with pytest.raises(InvalidWindow):
            segment_sliding(10, max_len=100, overlap=100)
        with pytest.raises(InvalidWindow):
            segment_sliding(10, max_len=50, overlap=60)
        with pytest.raises(InvalidWindow):
            segment_sliding(10, max_len=50, overlap=-1)

    def test_coverage_and_overlap_membership(self):
        rng = random.Random(20240504)
        for _ in range(200):
            n = rng.randint(1, 3000)
            max_len = rng.randint(2, 600)
            overlap = rng.randint(0, max_len - 1)
            segs = segment_sliding(n, max_len=max_len, overlap=overlap)
            covered = [0] * n
            for s in segs:
                assert 0 <= s.start < s.end <= n
                assert len(s) <= max_len
                for i in range(s.start, s.end):
                    covered[i] += 1
            assert all(c >= 1 for c in covered)
            # consecutive segments overlap by exactly `overlap` except the last
            stride = max_len - overlap
            for a, b in zip(segs, segs[1:]):
                assert b.start - a.start == stride
            # any multiply-covered token sits in an overlap zone
            for i, c in enumerate(covered):
                if c > 1:
                    assert any(b.start <= i < a.end
                               for a, b in zip(segs, segs[1:]))

    def test_length_monotone(self):
        # adding tokens never removes an existing segment start
        prev_starts: list[int] = []
        for n in range(1, 2500, 7):
            starts = [s.start for s in segment_sliding(n, max_len=512, overlap=100)]
            assert starts[: len(prev_starts)] == prev_starts or len(starts) >= len(prev_starts)
            if len(starts) > len(prev_starts):
                prev_starts = starts
            assert starts[: len(prev_starts)] == prev_starts[: len(starts)]

    def test_stops_at_first_segment_reaching_end(self):
        # N=924 with stride 412: window 1 would end at 924 == N, so stop there
        segs = segment_sliding(924, max_len=512, overlap=100)
        assert [(s.start, s.end) for s in segs] == [(0, 512), (412, 924)]
