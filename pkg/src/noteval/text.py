"""Tokenization, sentence splitting, and sliding-window segmentation.

Word-level plumbing shared by every metric: a deterministic tokenizer with
character offsets, a rule-based sentence splitter, and the fixed-stride
window generator used for long documents (max_len 512, overlap 100 by
default, so consecutive windows start 412 tokens apart).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import InvalidWindow


class Normalization(enum.Enum):
    """How raw text is carved into word tokens."""

    LOWER_ALNUM = "lower_alnum"
    WHITESPACE_ONLY = "whitespace"


@dataclass(frozen=True)
class Token:
    surface: str
    start_char: int
    end_char: int


@dataclass(frozen=True)
class TokenSequence:
    """An ordered run of tokens with offsets back into the source text."""

    tokens: tuple[Token, ...]
    normalization: Normalization

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


# Alphanumeric runs (unicode letters and digits; underscore is a separator).
_ALNUM = re.compile(r"[^\W_]+", re.UNICODE)
_NONSPACE = re.compile(r"\S+")


def tokenize(text: str, mode: Normalization = Normalization.LOWER_ALNUM) -> TokenSequence:
    """Split ``text`` into tokens with character offsets.

    LOWER_ALNUM lowercases and keeps maximal alphanumeric runs (digits
    included, punctuation and underscores discarded).  WHITESPACE_ONLY keeps
    every whitespace-delimited chunk verbatim.  Empty text yields an empty
    sequence.
    """
    pattern = _ALNUM if mode is Normalization.LOWER_ALNUM else _NONSPACE
    tokens = []
    for m in pattern.finditer(text):
        surface = m.group(0)
        if mode is Normalization.LOWER_ALNUM:
            surface = surface.lower()
        tokens.append(Token(surface, m.start(), m.end()))
    return TokenSequence(tuple(tokens), mode)


# Titles and Latin shorthands whose trailing period never ends a sentence.
_ABBREVIATIONS = frozenset({"dr", "mr", "mrs", "ms", "vs", "e.g", "i.e"})
_TERMINATORS = ".!?"


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Return (start, end) character spans of sentences in ``text``.

    A sentence ends at ``.``, ``!`` or ``?`` followed by whitespace or end of
    text, except when the word just before a period is a known abbreviation
    (Dr, Mr, Mrs, Ms, vs, e.g, i.e; case-insensitive).  Spans are stripped of
    surrounding whitespace and empty sentences are dropped.
    """
    spans: list[tuple[int, int]] = []
    start = 0
    n = len(text)
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        if i + 1 < n and not text[i + 1].isspace():
            continue
        if ch == "." and _preceding_word(text, i).lower() in _ABBREVIATIONS:
            continue
        spans.append((start, i + 1))
        start = i + 1
    if start < n:
        spans.append((start, n))
    return [span for span in (_strip_span(text, s, e) for s, e in spans) if span[0] < span[1]]


def _preceding_word(text: str, i: int) -> str:
    """The maximal non-space run ending just before index ``i``."""
    j = i
    while j > 0 and not text[j - 1].isspace():
        j -= 1
    return text[j:i]


def _strip_span(text: str, start: int, end: int) -> tuple[int, int]:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


@dataclass(frozen=True)
class Segment:
    """One sliding window over a token sequence (end index exclusive)."""

    token_range: tuple[int, int]
    segment_index: int

    @property
    def start(self) -> int:
        return self.token_range[0]

    @property
    def end(self) -> int:
        return self.token_range[1]

    def __len__(self) -> int:
        return self.token_range[1] - self.token_range[0]


def segment_sliding(n_tokens: int, max_len: int = 512, overlap: int = 100) -> list[Segment]:
    """Fixed-stride windows over ``n_tokens`` positions.

    Window k covers [k*stride, k*stride + max_len) clipped to the sequence,
    with stride = max_len - overlap.  Generation stops at the first window
    that reaches the end, so a sequence of at most max_len tokens yields
    exactly one window and the last window may be short.  Never pads.
    """
    if not (max_len > overlap >= 0):
        raise InvalidWindow(max_len, overlap)
    stride = max_len - overlap
    segments: list[Segment] = []
    k = 0
    while True:
        start = k * stride
        end = min(start + max_len, n_tokens)
        segments.append(Segment((start, end), k))
        if end >= n_tokens:
            return segments
        k += 1
