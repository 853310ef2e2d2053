"""Greedy token-matching metrics with optional medical token weighting.

Every system token is matched to its most-similar reference token (and vice
versa for recall); matches are combined as a weighted mean where tokens that
carry clinical meaning get weight 1 + alpha and all others weight 1.

Two normalizations are exposed.  WEIGHT_SUM (default) divides the weighted
sum of similarities by the sum of weights, keeping scores on the similarity
scale.  TOKEN_COUNT divides by the token count instead, so values can
exceed 1 whenever alpha > 0; it satisfies exactly
``token_count_value = weight_sum_value * (sum_of_weights / token_count)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .concepts import ConceptLexicon, link_concepts
from .data import SummaryPair
from .embeddings import (
    DocEmbedding,
    Side,
    embed_document,
    truncate_then_embed,
)
from .errors import EmptyDocument, LengthMismatch, ZeroVector
from .lexical import PRF
from .text import Normalization, TokenSequence, tokenize


class Normalize(enum.Enum):
    WEIGHT_SUM = "weight-sum"
    TOKEN_COUNT = "token-count"


@dataclass(frozen=True)
class WeightVector:
    """Per-token weights: 1 for plain tokens, 1 + alpha for medical ones."""

    weights: tuple[float, ...]
    alpha: float

    def __len__(self) -> int:
        return len(self.weights)


def uniform_weights(n: int) -> WeightVector:
    return WeightVector(weights=(1.0,) * n, alpha=0.0)


def medical_weights(tokens: TokenSequence | list[str], lexicon: ConceptLexicon,
                    alpha: float = 1.0) -> WeightVector:
    """Weight 1 + alpha for tokens inside any linked concept span, else 1."""
    surfaces = tokens.surfaces() if isinstance(tokens, TokenSequence) else list(tokens)
    weights = [1.0] * len(surfaces)
    for mention in link_concepts(surfaces, lexicon).mentions:
        start, end = mention.token_range
        for i in range(start, end):
            weights[i] = 1.0 + alpha
    return WeightVector(weights=tuple(weights), alpha=alpha)


def _normalized_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.sqrt((matrix * matrix).sum(axis=1))
    if np.any(norms == 0.0):
        raise ZeroVector()
    return matrix / norms[:, None]


def _weighted_mean(maxima: np.ndarray, weights: tuple[float, ...],
                   normalize: Normalize) -> float:
    # Left-fold python sums so all-ones weights reproduce the unweighted
    # value bit for bit, and so the TOKEN_COUNT identity below is exact.
    weighted = 0.0
    weight_sum = 0.0
    for m, w in zip(maxima, weights):
        weighted += w * float(m)
        weight_sum += w
    value = weighted / weight_sum
    if normalize is Normalize.TOKEN_COUNT:
        value = value * (weight_sum / len(weights))
    return value


def greedy_prf(sys: DocEmbedding, ref: DocEmbedding,
               w_sys: WeightVector | None = None,
               w_ref: WeightVector | None = None,
               normalize: Normalize = Normalize.WEIGHT_SUM) -> PRF:
    """Greedy best-match precision/recall/F1 between two embedded documents.

    Precision matches each system token to its best reference token;
    recall matches each reference token to its best system token.  F1 is
    the harmonic mean of the raw P and R (0 when P + R <= 0).
    """
    if len(sys.tokens) == 0 or len(ref.tokens) == 0:
        raise EmptyDocument("both documents need at least one token")
    w_sys = w_sys if w_sys is not None else uniform_weights(len(sys.tokens))
    w_ref = w_ref if w_ref is not None else uniform_weights(len(ref.tokens))
    if len(w_sys) != len(sys.tokens):
        raise LengthMismatch(f"system weights {len(w_sys)} != tokens {len(sys.tokens)}")
    if len(w_ref) != len(ref.tokens):
        raise LengthMismatch(f"reference weights {len(w_ref)} != tokens {len(ref.tokens)}")
    sim = _normalized_rows(sys.matrix) @ _normalized_rows(ref.matrix).T
    np.clip(sim, -1.0, 1.0, out=sim)
    p = _weighted_mean(sim.max(axis=1), w_sys.weights, normalize)
    r = _weighted_mean(sim.max(axis=0), w_ref.weights, normalize)
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return PRF(p, r, f)


def med_bertscore(pair: SummaryPair, provider, lexicon: ConceptLexicon,
                  alpha: float = 1.0, windowed: bool = True,
                  max_len: int = 512, overlap: int = 100,
                  normalize: Normalize = Normalize.WEIGHT_SUM,
                  mode: Normalization = Normalization.LOWER_ALNUM) -> PRF:
    """Medical-weighted greedy matching of a pair's system text vs reference.

    ``windowed=True`` embeds long documents window by window and scores all
    tokens (the sliding variant); ``windowed=False`` truncates both sides to
    ``max_len`` tokens first (the plain variant).  The two coincide whenever
    both sides fit in a single window.

    A contextual provider's stored records carry their own token lists
    (model subwords, windowed at export time); those are used verbatim for
    matching and weighting instead of the word tokenizer's output.
    """
    if hasattr(provider, "lookup"):
        sys_emb = _stored_embedding(provider, pair.pair_id, Side.SYSTEM,
                                    windowed, max_len)
        ref_emb = _stored_embedding(provider, pair.pair_id, Side.REFERENCE,
                                    windowed, max_len)
    else:
        sys_tokens = tokenize(pair.system, mode)
        ref_tokens = tokenize(pair.reference, mode)
        if windowed:
            sys_emb = embed_document(sys_tokens, provider, pair.pair_id,
                                     Side.SYSTEM, max_len=max_len, overlap=overlap)
            ref_emb = embed_document(ref_tokens, provider, pair.pair_id,
                                     Side.REFERENCE, max_len=max_len,
                                     overlap=overlap)
        else:
            sys_emb = truncate_then_embed(sys_tokens, provider, pair.pair_id,
                                          Side.SYSTEM, max_len=max_len)
            ref_emb = truncate_then_embed(ref_tokens, provider, pair.pair_id,
                                          Side.REFERENCE, max_len=max_len)
    w_sys = medical_weights(list(sys_emb.tokens), lexicon, alpha)
    w_ref = medical_weights(list(ref_emb.tokens), lexicon, alpha)
    return greedy_prf(sys_emb, ref_emb, w_sys, w_ref, normalize)


def _stored_embedding(provider, pair_id: str, side: Side, windowed: bool,
                      max_len: int) -> DocEmbedding:
    tokens, matrix = provider.lookup(pair_id, side)
    if not windowed:
        tokens, matrix = tokens[:max_len], matrix[:max_len]
    return DocEmbedding(pair_id, side, tuple(tokens), matrix, provider.dim)


def bert_prf(pair: SummaryPair, provider, windowed: bool = True,
             max_len: int = 512, overlap: int = 100,
             mode: Normalization = Normalization.LOWER_ALNUM) -> PRF:
    """Unweighted greedy matching (alpha = 0, so weighting is inert)."""
    empty = ConceptLexicon(entries={}, max_entry_len=0)
    return med_bertscore(pair, provider, empty, alpha=0.0, windowed=windowed,
                         max_len=max_len, overlap=overlap,
                         normalize=Normalize.WEIGHT_SUM, mode=mode)
