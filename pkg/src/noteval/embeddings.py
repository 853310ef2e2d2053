"""Embedding storage, ingestion, windowed document embedding, similarity.

Two vector sources feed the metrics: a static store (one vector per token or
per concept, decimal text file with a "<count> <dim>" header) and contextual
per-document files (JSONL of {pair_id, side, tokens, vectors} produced
offline by a model exporter).  ``embed_document`` turns a token sequence
into one vector row per token, windowing long documents and resolving
overlap zones in favor of the earlier window.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    DuplicateKey,
    HeaderMismatch,
    ParseError,
    ProviderError,
    TokenMismatch,
    ZeroVector,
)
from .text import TokenSequence, segment_sliding


class StoreKind(enum.Enum):
    TOKEN = "TOKEN"
    CONCEPT = "CONCEPT"


class Side(enum.Enum):
    SYSTEM = "system"
    REFERENCE = "reference"


@dataclass(frozen=True)
class EmbeddingStore:
    """Immutable key -> vector table with a fixed dimension."""

    dim: int
    table: dict[str, np.ndarray]
    kind: StoreKind = StoreKind.TOKEN

    def __contains__(self, key: str) -> bool:
        return key in self.table

    def __getitem__(self, key: str) -> np.ndarray:
        return self.table[key]

    def __len__(self) -> int:
        return len(self.table)

    def mean_vector(self) -> np.ndarray:
        """Mean of all stored vectors; the shared fallback for unknown keys."""
        if not self.table:
            raise ZeroVector("<empty store>")
        return np.mean(list(self.table.values()), axis=0)


def load_store(path: str, kind: StoreKind = StoreKind.TOKEN) -> EmbeddingStore:
    """Load a static embedding store.

    Line 1 is ``<count> <dim>``; each further line is a key followed by
    ``dim`` decimal floats, whitespace-separated.  Exactly ``count`` entries
    must follow; duplicate keys and all-zero vectors are rejected.
    """
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc), None, path) from None
    with f:
        header = f.readline()
        parts = header.split()
        if len(parts) != 2:
            raise HeaderMismatch(f"{path}: header must be '<count> <dim>', got {header!r}")
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise HeaderMismatch(f"{path}: non-integer header {header!r}") from None
        if count < 0 or dim < 1:
            raise HeaderMismatch(f"{path}: bad header values count={count} dim={dim}")
        table: dict[str, np.ndarray] = {}
        for line_no, raw in enumerate(f, start=2):
            if not raw.strip():
                continue
            fields = raw.split()
            if len(fields) != dim + 1:
                raise DimMismatch(
                    f"{path}: expected key + {dim} floats, got {len(fields)} fields",
                    line_no)
            key = fields[0]
            if key in table:
                raise DuplicateKey(key)
            try:
                vector = np.array([float(x) for x in fields[1:]], dtype=np.float64)
            except ValueError:
                raise ParseError("non-numeric vector component", line_no, path) from None
            if not np.any(vector):
                raise ZeroVector(key)
            table[key] = vector
    if len(table) != count:
        raise HeaderMismatch(
            f"{path}: header promises {count} entries, file has {len(table)}")
    return EmbeddingStore(dim=dim, table=table, kind=kind)


def save_store(store: EmbeddingStore, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"{len(store.table)} {store.dim}\n")
        for key, vector in store.table.items():
            f.write(key + " " + " ".join(repr(float(x)) for x in vector) + "\n")


def cosine(u, v) -> float:
    """Cosine similarity of two equal-length nonzero vectors, in [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimMismatch(f"cosine of shapes {u.shape} and {v.shape}")
    nu = math.sqrt(float(np.dot(u, u)))
    nv = math.sqrt(float(np.dot(v, v)))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector()
    value = float(np.dot(u, v)) / (nu * nv)
    return max(-1.0, min(1.0, value))


@dataclass(frozen=True)
class DocEmbedding:
    """One vector row per token of a document side."""

    pair_id: str
    side: Side
    tokens: tuple[str, ...]
    matrix: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        if self.matrix.shape != (len(self.tokens), self.dim):
            raise DimMismatch(
                f"matrix shape {self.matrix.shape} != ({len(self.tokens)}, {self.dim})")


# ---------------------------------------------------------------------------
# providers

class StaticProvider:
    """Resolves tokens through a static store; unknown tokens share one
    fallback vector (the mean of all store vectors)."""

    def __init__(self, store: EmbeddingStore):
        if not store.table:
            raise ProviderError("static provider needs a non-empty store")
        self.store = store
        self._unk = store.mean_vector()

    @property
    def dim(self) -> int:
        return self.store.dim

    def vectors_for_segment(self, pair_id: str, side: Side,
                            tokens: list[str], segment_index: int) -> np.ndarray:
        rows = [self.store[t] if t in self.store else self._unk for t in tokens]
        return np.array(rows, dtype=np.float64)


class ContextualFileProvider:
    """Serves precomputed contextual vectors from a JSONL export.

    Each record is {pair_id, side, tokens, vectors}; the stored token list
    must equal the tokenizer output for that document or the lookup fails
    with TokenMismatch.
    """

    def __init__(self, path: str):
        self.path = path
        self._records: dict[tuple[str, str], tuple[list[str], np.ndarray]] = {}
        dim = None
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
                for key in ("pair_id", "side", "tokens", "vectors"):
                    if key not in record:
                        raise ParseError(f"missing key {key!r}", line_no, path)
                tokens = [str(t) for t in record["tokens"]]
                matrix = np.array(record["vectors"], dtype=np.float64)
                if matrix.ndim != 2 or matrix.shape[0] != len(tokens):
                    raise DimMismatch(
                        f"{path}: vectors shape {matrix.shape} does not match "
                        f"{len(tokens)} tokens", line_no)
                if dim is None:
                    dim = matrix.shape[1]
                elif matrix.shape[1] != dim:
                    raise DimMismatch(f"{path}: inconsistent dim {matrix.shape[1]} "
                                      f"(expected {dim})", line_no)
                key = (str(record["pair_id"]), str(record["side"]))
                if key in self._records:
                    raise DuplicateKey(f"{key[0]}/{key[1]}")
                self._records[key] = (tokens, matrix)
        if dim is None:
            raise ProviderError(f"{path}: no records")
        self.dim = dim

    def __len__(self) -> int:
        return len(self._records)

    def lookup(self, pair_id: str, side: Side) -> tuple[list[str], np.ndarray]:
        key = (pair_id, side.value)
        if key not in self._records:
            raise ProviderError(f"no contextual record for pair {pair_id!r} "
                                f"side {side.value!r}")
        return self._records[key]

    def vectors_for_document(self, pair_id: str, side: Side,
                             tokens: list[str]) -> np.ndarray:
        stored_tokens, matrix = self.lookup(pair_id, side)
        if stored_tokens != tokens:
            raise TokenMismatch(
                f"pair {pair_id!r} side {side.value!r}: stored token list does not "
                f"match tokenizer output ({len(stored_tokens)} vs {len(tokens)} tokens)")
        return matrix


def embed_document(tokens: TokenSequence | list[str], provider, pair_id: str = "",
                   side: Side = Side.SYSTEM, max_len: int = 512,
                   overlap: int = 100) -> DocEmbedding:
    """Embed a document as one vector row per token.

    Documents of at most ``max_len`` tokens form a single window.  Longer
    documents are windowed with the standard stride; each window is embedded
    independently and, where windows overlap, the earlier window's vectors
    are kept, so the output always has exactly one row per token.

    Contextual providers return whole-document matrices (the windowing
    happened at export time); static providers are called per window.
    """
    surfaces = tokens.surfaces() if isinstance(tokens, TokenSequence) else list(tokens)
    if hasattr(provider, "vectors_for_document"):
        matrix = provider.vectors_for_document(pair_id, side, surfaces)
        return DocEmbedding(pair_id, side, tuple(surfaces), matrix, provider.dim)
    n = len(surfaces)
    rows = np.zeros((n, provider.dim), dtype=np.float64)
    filled = [False] * n
    for segment in segment_sliding(n, max_len=max_len, overlap=overlap):
        seg_tokens = surfaces[segment.start:segment.end]
        seg_matrix = provider.vectors_for_segment(pair_id, side, seg_tokens,
                                                  segment.segment_index)
        if seg_matrix.shape != (len(seg_tokens), provider.dim):
            raise ProviderError(
                f"provider returned shape {seg_matrix.shape} for a "
                f"{len(seg_tokens)}-token window")
        for offset in range(len(seg_tokens)):
            index = segment.start + offset
            if not filled[index]:
                rows[index] = seg_matrix[offset]
                filled[index] = True
    return DocEmbedding(pair_id, side, tuple(surfaces), rows, provider.dim)


def truncate_then_embed(tokens: TokenSequence | list[str], provider,
                        pair_id: str = "", side: Side = Side.SYSTEM,
                        max_len: int = 512) -> DocEmbedding:
    """Single-window variant: drop tokens beyond ``max_len``, then embed.

    With a contextual provider the stored record covers the full document;
    its token list is checked against the full tokenizer output and the
    matrix is truncated alongside the tokens.
    """
    surfaces = tokens.surfaces() if isinstance(tokens, TokenSequence) else list(tokens)
    if hasattr(provider, "vectors_for_document"):
        matrix = provider.vectors_for_document(pair_id, side, surfaces)
        kept = surfaces[:max_len]
        return DocEmbedding(pair_id, side, tuple(kept), matrix[:max_len],
                            provider.dim)
    return embed_document(surfaces[:max_len], provider, pair_id, side,
                          max_len=max_len, overlap=0)
