"""N-gram and longest-common-subsequence overlap metrics.

Clipped multiset n-gram matching (no stemming, no stopword removal) and
whole-text LCS, each reported as precision / recall / F1 against the
reference.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InvalidN
from .text import TokenSequence


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


def _prf(match: float, n_sys: float, n_ref: float) -> PRF:
    p = match / n_sys if n_sys > 0 else 0.0
    r = match / n_ref if n_ref > 0 else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return PRF(p, r, f)


def _surfaces(tokens) -> list[str]:
    if isinstance(tokens, TokenSequence):
        return tokens.surfaces()
    return list(tokens)


def _ngrams(surfaces: list[str], n: int) -> Counter:
    return Counter(tuple(surfaces[i:i + n]) for i in range(len(surfaces) - n + 1))


def rouge_n(sys: TokenSequence, ref: TokenSequence, n: int) -> PRF:
    """Clipped n-gram overlap of the system tokens against the reference.

    match = sum over n-grams g of min(count_sys(g), count_ref(g));
    P = match / #system n-grams, R = match / #reference n-grams.  A side
    with no n-grams contributes 0 for its ratio rather than an error.
    """
    if n < 1:
        raise InvalidN(n)
    sys_grams = _ngrams(_surfaces(sys), n)
    ref_grams = _ngrams(_surfaces(ref), n)
    match = sum(min(count, ref_grams[gram]) for gram, count in sys_grams.items())
    return _prf(match, sum(sys_grams.values()), sum(ref_grams.values()))


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, O(|a|*|b|) time, O(|b|) space."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                curr.append(max(prev[j], curr[j - 1]))
        prev = curr
    return prev[-1]


def rouge_l(sys: TokenSequence, ref: TokenSequence) -> PRF:
    """Whole-text LCS overlap: P = LCS/|sys|, R = LCS/|ref|."""
    sys_tokens = _surfaces(sys)
    ref_tokens = _surfaces(ref)
    match = lcs_length(sys_tokens, ref_tokens)
    return _prf(match, len(sys_tokens), len(ref_tokens))
