"""Sliding-window arithmetic over subword sequences.

Window starts sit at exact multiples of the stride (max_len - overlap) and
only the last window may be shorter than max_len.  This matches the scoring
toolkit's segmentation contract, so merged exports line up position for
position with its windowed document embeddings.
"""

from __future__ import annotations

from .errors import ConfigError


def window_spans(n_tokens: int, max_len: int, overlap: int = 0) -> list[tuple[int, int]]:
    """Half-open [start, end) spans covering ``n_tokens`` positions."""
    if max_len < 1:
        raise ConfigError(f"max_len must be >= 1, got {max_len}")
    if overlap < 0 or overlap >= max_len:
        raise ConfigError(f"overlap must satisfy 0 <= overlap < max_len, "
                          f"got overlap={overlap} max_len={max_len}")
    if n_tokens <= 0:
        return []
    stride = max_len - overlap
    starts = [0]
    while starts[-1] + max_len < n_tokens:
        starts.append(starts[-1] + stride)
    return [(start, min(start + max_len, n_tokens)) for start in starts]
