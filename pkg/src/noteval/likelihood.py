"""Sequence-likelihood scores over pluggable log-probability providers.

The score of a summary is the (weighted) mean of its per-token conditional
log probabilities.  Two providers are supported: a built-in add-k smoothed
n-gram language model (unconditional, so any conditioning text is ignored)
and a file provider serving rows precomputed offline by a seq2seq model,
keyed by (pair_id, direction).

Weighted scores follow the same convention as the matching metrics: medical
tokens carry weight 1 + alpha.  WEIGHT_SUM (default) divides by the weight
sum, staying on the per-token scale; RAW_SUM is the plain weighted sum and
satisfies exactly ``raw_sum_value = weight_sum_value * sum_of_weights``.
"""

from __future__ import annotations

import enum
import json
import math
from collections import defaultdict
from dataclasses import dataclass

from .errors import (
    DuplicateKey,
    EmptyCorpus,
    EmptyTarget,
    LengthMismatch,
    MissingPair,
    ParseError,
    TokenMismatch,
)
from .matching import WeightVector
from .text import TokenSequence


class Direction(enum.Enum):
    SRC_TO_SYS = "src_to_sys"
    REF_TO_SYS = "ref_to_sys"
    SYS_TO_REF = "sys_to_ref"


class SumNormalize(enum.Enum):
    WEIGHT_SUM = "weight-sum"
    RAW_SUM = "raw-sum"


@dataclass(frozen=True)
class TokenLogProbs:
    """Per-token conditional log probabilities for one scored document."""

    pair_id: str
    direction: Direction
    target_tokens: tuple[str, ...]
    logprobs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.target_tokens) != len(self.logprobs):
            raise LengthMismatch(
                f"{len(self.target_tokens)} tokens vs {len(self.logprobs)} logprobs")
        for lp in self.logprobs:
            if not math.isfinite(lp):
                raise ParseError(f"non-finite logprob {lp!r} for pair {self.pair_id!r}")
            if lp > 0:
                raise ParseError(f"positive logprob {lp!r} for pair {self.pair_id!r}")

    def __len__(self) -> int:
        return len(self.logprobs)


_BOS = "<s>"
_UNK = "<unk>"


class NGramLM:
    """Add-k smoothed n-gram model with BOS padding and a shared UNK token.

    For a history h of the n-1 previous tokens (out-of-vocabulary history
    tokens collapse to UNK, document starts are padded with BOS):

        p(w | h) = (count(h, w) + k) / (count(h) + k * (|vocab| + 1))

    The +1 reserves mass for UNK, so the distribution over vocab plus UNK
    sums to one.
    """

    def __init__(self, n: int, k: float = 1.0):
        if n < 1:
            raise ValueError(f"order must be >= 1, got {n}")
        if k <= 0:
            raise ValueError(f"smoothing k must be > 0, got {k}")
        self.n = n
        self.k = k
        self.vocab: set[str] = set()
        self._continuations: dict[tuple[str, ...], dict[str, int]] = defaultdict(dict)
        self._history_totals: dict[tuple[str, ...], int] = defaultdict(int)

    def _normalize_history(self, history: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(t if (t == _BOS or t in self.vocab) else _UNK for t in history)

    def observe(self, surfaces: list[str]) -> None:
        self.vocab.update(surfaces)
        padded = [_BOS] * (self.n - 1) + list(surfaces)
        for i in range(len(surfaces)):
            history = tuple(padded[i:i + self.n - 1])
            target = surfaces[i]
            bucket = self._continuations[history]
            bucket[target] = bucket.get(target, 0) + 1
            self._history_totals[history] += 1

    def prob(self, token: str, history: tuple[str, ...]) -> float:
        history = self._normalize_history(history)
        word = token if token in self.vocab else _UNK
        count = self._continuations.get(history, {}).get(word, 0)
        total = self._history_totals.get(history, 0)
        return (count + self.k) / (total + self.k * (len(self.vocab) + 1))

    def token_logprobs(self, surfaces: list[str]) -> list[float]:
        padded = [_BOS] * (self.n - 1) + list(surfaces)
        out = []
        for i, token in enumerate(surfaces):
            history = tuple(padded[i:i + self.n - 1])
            out.append(math.log(self.prob(token, history)))
        return out


def train_ngram_lm(corpus: list[TokenSequence | list[str]], n: int,
                   k: float = 1.0) -> NGramLM:
    """Train an add-k n-gram model on tokenized documents."""
    docs = [c.surfaces() if isinstance(c, TokenSequence) else list(c) for c in corpus]
    docs = [d for d in docs if d]
    if not docs:
        raise EmptyCorpus("training corpus has no tokens")
    lm = NGramLM(n=n, k=k)
    for doc in docs:
        lm.observe(doc)
    return lm


class FileLogProbProvider:
    """Serves stored TokenLogProbs rows keyed by (pair_id, direction)."""

    def __init__(self, path: str):
        self.path = path
        self._rows: dict[tuple[str, Direction], TokenLogProbs] = {}
        try:
            f = open(path, "r", encoding="utf-8")
        except OSError as exc:
            raise ParseError(str(exc), None, path) from None
        with f:
            for line_no, raw in enumerate(f, start=1):
                if not raw.strip():
                    continue
                try:
                    record = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"invalid JSON: {exc.msg}", line_no, path) from None
                for key in ("pair_id", "direction", "target_tokens", "logprobs"):
                    if key not in record:
                        raise ParseError(f"missing key {key!r}", line_no, path)
                try:
                    direction = Direction(str(record["direction"]).lower())
                except ValueError:
                    raise ParseError(f"unknown direction {record['direction']!r}",
                                     line_no, path) from None
                row = TokenLogProbs(
                    pair_id=str(record["pair_id"]),
                    direction=direction,
                    target_tokens=tuple(str(t) for t in record["target_tokens"]),
                    logprobs=tuple(float(x) for x in record["logprobs"]),
                )
                key = (row.pair_id, row.direction)
                if key in self._rows:
                    raise DuplicateKey(f"{row.pair_id}/{direction.value}")
                self._rows[key] = row

    def __len__(self) -> int:
        return len(self._rows)

    def lookup(self, pair_id: str, direction: Direction) -> TokenLogProbs:
        key = (pair_id, direction)
        if key not in self._rows:
            raise MissingPair(pair_id, direction.value)
        return self._rows[key]

    def pair_ids(self, direction: Direction) -> list[str]:
        return [pid for pid, d in self._rows if d is direction]


def score_logprobs(target: TokenSequence | list[str] | None, provider,
                   conditioning: str | None = None, pair_id: str = "",
                   direction: Direction = Direction.REF_TO_SYS) -> TokenLogProbs:
    """Per-token log probabilities of ``target`` under ``provider``.

    The n-gram provider scores the given tokens directly (conditioning text
    is ignored: the built-in model is unconditional).  The file provider
    returns the stored row for (pair_id, direction); when a target is also
    given its tokens must match the stored ones.
    """
    if hasattr(provider, "lookup"):
        row = provider.lookup(pair_id, direction)
        if target is not None:
            surfaces = (target.surfaces() if isinstance(target, TokenSequence)
                        else list(target))
            if list(row.target_tokens) != surfaces:
                raise TokenMismatch(
                    f"pair {pair_id!r} {direction.value}: stored target tokens do not "
                    f"match the given target")
        return row
    if target is None:
        raise EmptyTarget("n-gram provider needs a target")
    surfaces = target.surfaces() if isinstance(target, TokenSequence) else list(target)
    if not surfaces:
        raise EmptyTarget("target has no tokens")
    logprobs = provider.token_logprobs(surfaces)
    return TokenLogProbs(pair_id=pair_id, direction=direction,
                         target_tokens=tuple(surfaces), logprobs=tuple(logprobs))


def bartscore(lp: TokenLogProbs) -> float:
    """Length-normalized mean log probability (always <= 0)."""
    if len(lp) == 0:
        raise EmptyTarget("cannot score an empty target")
    total = 0.0
    for x in lp.logprobs:
        total += x
    return total / len(lp)


def med_bartscore(lp: TokenLogProbs, weights: WeightVector,
                  normalize: SumNormalize = SumNormalize.WEIGHT_SUM) -> float:
    """Medical-weighted log-probability score.

    WEIGHT_SUM: sum(w_t * logprob_t) / sum(w_t); RAW_SUM multiplies that
    mean back by the weight sum, i.e. the plain weighted sum.
    """
    if len(lp) == 0:
        raise EmptyTarget("cannot score an empty target")
    if len(weights) != len(lp):
        raise LengthMismatch(f"{len(weights)} weights vs {len(lp)} logprobs")
    weighted = 0.0
    weight_sum = 0.0
    for lp_t, w_t in zip(lp.logprobs, weights.weights):
        weighted += w_t * lp_t
        weight_sum += w_t
    value = weighted / weight_sum
    if normalize is SumNormalize.RAW_SUM:
        value = value * weight_sum
    return value
