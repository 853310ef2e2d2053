"""Scores derived from human annotations, and the aggregate meta-score.

Fact-count annotations yield factual precision/recall/F1 plus hallucination
and omission rates; key-phrase annotations yield length-normalized span
counts.  Error-category counts yield a weighted error score and the
per-sentence quality score.  The aggregate meta-score combines correlation
coefficients: (2F - H - O) / 4, rewarding correlation with factual F1 and
anti-correlation with hallucination and omission rates, both treated as
critical failure modes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .data import FactAnnotation, KeyPhraseAnnotation, SummaryPair
from .errors import EmptyText, NegativeCount, UndefinedScore
from .text import Normalization, split_sentences, tokenize


@dataclass(frozen=True)
class FactScores:
    factual_precision: float
    factual_recall: float
    factual_f1: float
    hallucination_rate: float
    omission_rate: float
    system_facts: int
    reference_facts: int


def fact_scores(a: FactAnnotation) -> FactScores:
    """Per-annotation factual scores.

    system_facts = correct + incorrect + hallucinated.  Precision and the
    hallucination rate divide by system_facts; recall and the omission rate
    divide by reference_facts.  A zero denominator leaves its components
    undefined and raises, naming them.
    """
    system_facts = a.correct_facts + a.incorrect_facts + a.hallucinated_facts
    undefined: list[str] = []
    if system_facts == 0:
        undefined += ["factual_precision", "hallucination_rate"]
    if a.reference_facts == 0:
        undefined += ["factual_recall", "omission_rate"]
    if undefined:
        raise UndefinedScore(tuple(undefined), f"pair {a.pair_id!r}")
    p = a.correct_facts / system_facts
    r = a.correct_facts / a.reference_facts
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return FactScores(
        factual_precision=p,
        factual_recall=r,
        factual_f1=f1,
        hallucination_rate=a.hallucinated_facts / system_facts,
        omission_rate=a.omitted_facts / a.reference_facts,
        system_facts=system_facts,
        reference_facts=a.reference_facts,
    )


@dataclass(frozen=True)
class KeyPhraseScores:
    hallucination_count: float
    omission_count: float


def keyphrase_scores(ann: KeyPhraseAnnotation, pair: SummaryPair) -> KeyPhraseScores:
    """Span counts normalized by text length in words.

    hallucination_count divides the number of highlighted system spans by
    the system word count; omission_count divides the number of omission
    markers by the reference word count.  Repeated identical spans all
    count.
    """
    system_words = len(tokenize(pair.system, Normalization.LOWER_ALNUM))
    reference_words = len(tokenize(pair.reference, Normalization.LOWER_ALNUM))
    if system_words == 0 or reference_words == 0:
        raise EmptyText(f"pair {pair.pair_id!r}: need at least one word per side")
    return KeyPhraseScores(
        hallucination_count=len(ann.hallucinated_spans) / system_words,
        omission_count=len(ann.omission_markers) / reference_words,
    )


@dataclass(frozen=True)
class ErrorCounts:
    critical: int
    non_critical: int = 0
    spelling_grammar: int = 0

    def __post_init__(self) -> None:
        for name in ("critical", "non_critical", "spelling_grammar"):
            value = getattr(self, name)
            if value < 0:
                raise NegativeCount(name, value)


@dataclass(frozen=True)
class ErrorWeights:
    critical: float = 1.0
    non_critical: float = 1.0 / 3.0
    spelling_grammar: float = 1.0 / 12.0


DEFAULT_ERROR_WEIGHTS = ErrorWeights()


def error_score(e: ErrorCounts, weights: ErrorWeights = DEFAULT_ERROR_WEIGHTS) -> float:
    """Weighted error count: critical errors weigh 1, non-critical 1/3,
    spelling/grammar 1/12 by default."""
    return (e.critical * weights.critical
            + e.non_critical * weights.non_critical
            + e.spelling_grammar * weights.spelling_grammar)


def quality_score(e: ErrorCounts, summary: str, reference: str,
                  clamp01: bool = False,
                  weights: ErrorWeights = DEFAULT_ERROR_WEIGHTS) -> float:
    """1 minus the error score per sentence.

    The denominator is the larger sentence count of the two texts, so a
    fully correct summary scores 1 and each weighted error subtracts one
    sentence's worth.  Unclamped by default (heavily erroneous short texts
    go negative); ``clamp01`` restricts to [0, 1].
    """
    max_sentlen = max(len(split_sentences(summary)), len(split_sentences(reference)))
    if max_sentlen < 1:
        raise EmptyText("both texts have zero sentences")
    value = 1.0 - error_score(e, weights) / max_sentlen
    if clamp01:
        value = min(1.0, max(0.0, value))
    return value


def aggregate_score(f: float, h: float, o: float) -> float:
    """(2F - H - O) / 4 over correlation coefficients.

    F is a metric's correlation with factual F1; H and O its correlations
    with the hallucination and omission rates.  Doubling F's weight keeps
    the three failure axes balanced against overall factuality; the result
    stays within [-1, 1] for inputs in [-1, 1].
    """
    return (2.0 * f - h - o) / 4.0


class Combine(enum.Enum):
    """How to collapse multiple annotators of one pair into one row."""

    MEAN = "mean"
    FIRST = "first"
    PER_ANNOTATOR = "per-annotator"


FACT_COLUMNS = ("factual_p", "factual_r", "factual_f1", "halluc_rate", "omission_rate")
KEYPHRASE_COLUMNS = ("halluc_count", "omission_count")

# Direction of each reference criterion: rates/counts are failure measures.
LOWER_IS_BETTER = frozenset({"halluc_rate", "omission_rate",
                             "halluc_count", "omission_count"})

def _combine_rows(rows: dict[str, list[tuple[str, dict[str, float]]]],
                  combine: Combine) -> dict[str, dict[str, float]]:
    """rows: pair_id -> [(annotator_id, {column: value})] in file order.

    Annotations may carry different defined columns (zero-denominator
    components are absent); MEAN averages each column over the annotators
    that define it.
    """
    out: dict[str, dict[str, float]] = {}
    for pair_id, annotated in rows.items():
        if combine is Combine.FIRST:
            out[pair_id] = annotated[0][1]
        elif combine is Combine.MEAN:
            keys: list[str] = []
            for _, values in annotated:
                keys += [k for k in values if k not in keys]
            out[pair_id] = {
                k: (lambda vs: sum(vs) / len(vs))([v[k] for _, v in annotated
                                                   if k in v])
                for k in keys
            }
        else:
            for annotator_id, values in annotated:
                out[f"{pair_id}:{annotator_id}"] = values
    return out


def _fact_components(a: FactAnnotation) -> dict[str, float]:
    """Defined fact-score columns only; zero-denominator components omitted."""
    system_facts = a.correct_facts + a.incorrect_facts + a.hallucinated_facts
    values: dict[str, float] = {}
    if system_facts > 0:
        values["factual_p"] = a.correct_facts / system_facts
        values["halluc_rate"] = a.hallucinated_facts / system_facts
    if a.reference_facts > 0:
        values["factual_r"] = a.correct_facts / a.reference_facts
        values["omission_rate"] = a.omitted_facts / a.reference_facts
    if "factual_p" in values and "factual_r" in values:
        p, r = values["factual_p"], values["factual_r"]
        values["factual_f1"] = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return values


def fact_score_table(annotations: list[FactAnnotation],
                     combine: Combine = Combine.MEAN) -> dict[str, dict[str, float]]:
    """Column name -> {row_id: value} for the five fact-based criteria.

    Rows are pairs (annotators averaged or first-taken) or pair:annotator
    keys under PER_ANNOTATOR.  A zero denominator leaves that annotation out
    of the affected columns rather than failing the whole table.
    """
    rows: dict[str, list[tuple[str, dict[str, float]]]] = {}
    for a in annotations:
        rows.setdefault(a.pair_id, []).append((a.annotator_id, _fact_components(a)))
    combined = _combine_rows(rows, combine)
    return {col: {rid: vals[col] for rid, vals in combined.items() if col in vals}
            for col in FACT_COLUMNS}


def keyphrase_score_table(annotations: list[KeyPhraseAnnotation],
                          pairs: dict[str, SummaryPair],
                          combine: Combine = Combine.MEAN) -> dict[str, dict[str, float]]:
    """Column name -> {row_id: value} for the two key-phrase criteria."""
    rows: dict[str, list[tuple[str, dict[str, float]]]] = {}
    for ann in annotations:
        scores = keyphrase_scores(ann, pairs[ann.pair_id])
        values = {"halluc_count": scores.hallucination_count,
                  "omission_count": scores.omission_count}
        rows.setdefault(ann.pair_id, []).append((ann.annotator_id, values))
    combined = _combine_rows(rows, combine)
    return {col: {rid: vals[col] for rid, vals in combined.items()}
            for col in KEYPHRASE_COLUMNS}
