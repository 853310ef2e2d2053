"""Medical concept linking and the concept-embedding similarity metric.

A lexicon maps normalized surface forms to concept ids; linking is greedy
longest-match left to right.  The metric compares the deduplicated concept
sets of system and reference through their knowledge-graph embeddings:
for each anchor concept, the best cosine against the other side, averaged
over the number of reference concepts.

Two modes are provided.  RECALL (default) anchors on reference concepts,
so the value is a true recall bounded by 1.  VERBATIM sums best-matches of
*system* concepts while still dividing by the reference count; it can
exceed 1 when the system mentions more concepts than the reference.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .embeddings import EmbeddingStore, cosine
from .errors import ParseError, UndefinedScore
from .text import Normalization, TokenSequence, tokenize


@dataclass(frozen=True)
class ConceptLexicon:
    """Normalized surface form (token tuple) -> concept id."""

    entries: dict[tuple[str, ...], str]
    max_entry_len: int

    def __len__(self) -> int:
        return len(self.entries)


def build_lexicon(pairs: list[tuple[str, str]]) -> ConceptLexicon:
    """Build a lexicon from (surface_form, concept_id) pairs.

    Surface forms are normalized with the standard word tokenizer, so
    "Chest  Pain" and "chest pain" collide to the same entry.
    """
    entries: dict[tuple[str, ...], str] = {}
    max_len = 0
    for surface, concept_id in pairs:
        key = tuple(tokenize(surface, Normalization.LOWER_ALNUM).surfaces())
        if not key:
            raise ParseError(f"surface form {surface!r} has no tokens")
        entries[key] = concept_id
        max_len = max(max_len, len(key))
    return ConceptLexicon(entries=entries, max_entry_len=max_len)


def load_lexicon(path: str) -> ConceptLexicon:
    """Load a TSV lexicon: ``surface_form<TAB>concept_id`` per line."""
    pairs: list[tuple[str, str]] = []
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc), None, path) from None
    with f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise ParseError("expected '<surface>\\t<concept_id>'", line_no, path)
            surface, concept_id = line.split("\t", 1)
            if not surface.strip() or not concept_id.strip():
                raise ParseError("empty surface form or concept id", line_no, path)
            pairs.append((surface, concept_id.strip()))
    return build_lexicon(pairs)


@dataclass(frozen=True)
class ConceptMention:
    concept_id: str
    token_range: tuple[int, int]


@dataclass(frozen=True)
class ConceptSet:
    """Linked concept mentions; multiset counts kept for diagnostics."""

    mentions: tuple[ConceptMention, ...]

    def ids(self) -> list[str]:
        return [m.concept_id for m in self.mentions]

    def counts(self) -> Counter:
        return Counter(self.ids())

    def unique_ids(self) -> list[str]:
        """Deduplicated ids in first-mention order."""
        seen: set[str] = set()
        out: list[str] = []
        for cid in self.ids():
            if cid not in seen:
                seen.add(cid)
                out.append(cid)
        return out


def link_concepts(tokens: TokenSequence | list[str],
                  lexicon: ConceptLexicon) -> ConceptSet:
    """Greedy longest-match linking, left to right, no overlaps.

    At each position the longest lexicon entry starting there wins and the
    scan resumes after it; unmatched tokens are skipped one at a time.
    """
    surfaces = tokens.surfaces() if isinstance(tokens, TokenSequence) else list(tokens)
    mentions: list[ConceptMention] = []
    i = 0
    n = len(surfaces)
    while i < n:
        matched = False
        for span in range(min(lexicon.max_entry_len, n - i), 0, -1):
            key = tuple(surfaces[i:i + span])
            if key in lexicon.entries:
                mentions.append(ConceptMention(lexicon.entries[key], (i, i + span)))
                i += span
                matched = True
                break
        if not matched:
            i += 1
    return ConceptSet(tuple(mentions))


class MistMode(enum.Enum):
    RECALL = "recall"
    VERBATIM = "verbatim"


@dataclass(frozen=True)
class MistResult:
    value: float
    mode: MistMode
    system_used: int
    reference_used: int
    system_skipped: int
    reference_skipped: int


def mist(sys: ConceptSet, ref: ConceptSet, kge: EmbeddingStore,
         mode: MistMode = MistMode.RECALL) -> MistResult:
    """Concept-embedding similarity of system concepts against reference.

    Concepts are deduplicated first; those without a vector in ``kge`` are
    skipped and reported in the result.  With R' and S' the embeddable
    reference/system concept sets:

    * RECALL: (1/|R'|) * sum over r in R' of max over s in S' of cos(r, s)
    * VERBATIM: (1/|R'|) * sum over s in S' of max over r in R' of cos(s, r)

    An empty R' leaves the score undefined; an empty S' scores 0.
    """
    sys_ids = sys.unique_ids()
    ref_ids = ref.unique_ids()
    sys_used = [c for c in sys_ids if c in kge]
    ref_used = [c for c in ref_ids if c in kge]
    sys_skipped = len(sys_ids) - len(sys_used)
    ref_skipped = len(ref_ids) - len(ref_used)
    if not ref_used:
        raise UndefinedScore(("mist",), "no reference concepts with embeddings")
    if not sys_used:
        return MistResult(0.0, mode, 0, len(ref_used), sys_skipped, ref_skipped)
    if mode is MistMode.RECALL:
        anchors, others = ref_used, sys_used
    else:
        anchors, others = sys_used, ref_used
    total = 0.0
    for anchor in anchors:
        total += max(cosine(kge[anchor], kge[other]) for other in others)
    value = total / len(ref_used)
    return MistResult(value, mode, len(sys_used), len(ref_used),
                      sys_skipped, ref_skipped)
