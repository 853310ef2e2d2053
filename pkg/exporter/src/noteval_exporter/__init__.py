"""noteval-exporter: pretrained-model outputs in the noteval file formats.

The exporter bridges neural models to the scoring toolkit's external
interfaces: contextual embedding JSONL, teacher-forced token
log-probability JSONL, and learned-metric score CSV.  It never computes
metrics itself; it only materializes model outputs that the toolkit then
consumes through its file providers.
"""

from .contextual import export_contextual
from .dataset import NotePair, load_pairs
from .errors import (
    ConfigError,
    DatasetError,
    ExporterError,
    ModelLoadError,
    SequenceTooLong,
)
from .jobs import DIRECTIONS, ExportJob, ExportResult
from .logprobs import export_logprobs
from .scores import export_metric_scores
from .windows import window_spans

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DIRECTIONS", "DatasetError", "ExportJob", "ExportResult",
    "ExporterError", "ModelLoadError", "NotePair", "SequenceTooLong",
    "export_contextual", "export_logprobs", "export_metric_scores",
    "load_pairs", "window_spans",
]
