"""Learned-metric score export.

Runs a regression cross-encoder over (reference, system) per pair and
writes the two-column score CSV with higher_is_better.  The value is the
model's raw regression output; the exporter applies no further arithmetic.
"""

from __future__ import annotations

import os
import re

from .dataset import load_pairs
from .errors import ConfigError
from .jobs import ExportJob, ExportResult
from .models import load_regressor
from .writers import write_score_csv

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


def export_metric_scores(job: ExportJob, metric_name: str = "bleurt") -> ExportResult:
    """Write <metric_name>.csv with one model score per pair."""
    import torch

    if not _NAME_RE.match(metric_name):
        raise ConfigError(f"metric name {metric_name!r} is not a valid file stem")
    tokenizer, model = load_regressor(job.model)
    pairs = load_pairs(job.dataset)

    values: dict[str, float] = {}
    for pair in pairs:
        encoded = tokenizer(pair.reference, pair.system, truncation=True,
                            return_tensors="pt")
        with torch.no_grad():
            values[pair.pair_id] = float(model(**encoded).logits[0, 0])

    os.makedirs(job.out_dir, exist_ok=True)
    out_path = os.path.join(job.out_dir, metric_name + ".csv")
    write_score_csv(out_path, metric_name, values)
    return ExportResult(path=out_path, n_records=len(values))
