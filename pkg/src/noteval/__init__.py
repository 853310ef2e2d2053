"""noteval: scoring and meta-evaluation of automatically generated clinical notes.

The library computes lexical, embedding-based, concept-based, and
likelihood-based similarity metrics between system and reference notes,
derives reference criteria from human annotations (fact counts, key-phrase
spans, error categories), and meta-evaluates metrics by correlating them
with those criteria.  The ``noteval`` command line wires the same pieces
into a file-based pipeline.
"""

from .analysis import (
    ENSEMBLE_PRESETS,
    CorrelationReport,
    EnsembleConfig,
    ScoreTable,
    average_reports,
    cohen_kappa,
    correlation_report,
    ensemble,
    f1_tolerant,
    iaa,
    iaa_table,
    pearson,
    zscore_column,
)
from .concepts import (
    ConceptLexicon,
    ConceptSet,
    MistMode,
    MistResult,
    build_lexicon,
    link_concepts,
    load_lexicon,
    mist,
)
from .data import (
    AnnotationKind,
    Dataset,
    FactAnnotation,
    Format,
    KeyPhraseAnnotation,
    ScoreColumn,
    Section,
    SummaryPair,
    load_dataset,
    load_fact_annotations,
    load_keyphrase_annotations,
    load_score_column,
    save_dataset,
    save_score_column,
)
from .embeddings import (
    ContextualFileProvider,
    DocEmbedding,
    EmbeddingStore,
    Side,
    StaticProvider,
    StoreKind,
    cosine,
    embed_document,
    load_store,
    save_store,
    truncate_then_embed,
)
from .errors import NotevalError, UndefinedScore
from .lexical import PRF, lcs_length, rouge_l, rouge_n
from .likelihood import (
    Direction,
    FileLogProbProvider,
    NGramLM,
    SumNormalize,
    TokenLogProbs,
    bartscore,
    med_bartscore,
    score_logprobs,
    train_ngram_lm,
)
from .matching import (
    Normalize,
    WeightVector,
    bert_prf,
    greedy_prf,
    med_bertscore,
    medical_weights,
    uniform_weights,
)
from .refscores import (
    Combine,
    DEFAULT_ERROR_WEIGHTS,
    ErrorCounts,
    ErrorWeights,
    FactScores,
    KeyPhraseScores,
    aggregate_score,
    error_score,
    fact_score_table,
    fact_scores,
    keyphrase_score_table,
    keyphrase_scores,
    quality_score,
)
from .text import (
    Normalization,
    Segment,
    Token,
    TokenSequence,
    segment_sliding,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationKind", "Combine", "ConceptLexicon", "ConceptSet",
    "ContextualFileProvider", "CorrelationReport", "DEFAULT_ERROR_WEIGHTS",
    "Dataset", "Direction", "DocEmbedding", "ENSEMBLE_PRESETS",
    "EmbeddingStore", "EnsembleConfig", "ErrorCounts", "ErrorWeights",
    "FactAnnotation", "FactScores", "FileLogProbProvider", "Format",
    "KeyPhraseAnnotation", "KeyPhraseScores", "MistMode", "MistResult",
    "NGramLM", "Normalization", "Normalize", "NotevalError", "PRF",
    "ScoreColumn", "ScoreTable", "Section", "Segment", "Side",
    "StaticProvider", "StoreKind", "SumNormalize", "SummaryPair", "Token",
    "TokenLogProbs", "TokenSequence", "UndefinedScore", "WeightVector",
    "aggregate_score", "average_reports", "bartscore", "bert_prf",
    "build_lexicon", "cohen_kappa", "correlation_report", "cosine",
    "embed_document", "ensemble", "error_score", "f1_tolerant",
    "fact_score_table", "fact_scores", "greedy_prf", "iaa", "iaa_table",
    "keyphrase_score_table", "keyphrase_scores", "lcs_length",
    "link_concepts", "load_dataset", "load_fact_annotations",
    "load_keyphrase_annotations", "load_lexicon", "load_score_column",
    "load_store", "med_bartscore", "med_bertscore", "medical_weights",
    "mist", "pearson", "quality_score", "rouge_l", "rouge_n",
    "save_dataset", "save_score_column", "save_store", "score_logprobs",
    "segment_sliding", "split_sentences", "tokenize", "train_ngram_lm",
    "truncate_then_embed", "uniform_weights", "zscore_column",
]
