"""Token log-probability export under teacher forcing.

One JSONL record per (pair_id, direction): the target's content subwords
plus the end-of-sequence token, with one conditional log probability per
target position given the conditioning text.  Directions name
(conditioning -> target): src_to_sys, ref_to_sys, sys_to_ref.
"""

from __future__ import annotations

import os

from .dataset import NotePair, load_pairs
from .errors import DatasetError, ModelLoadError
from .jobs import ExportJob, ExportResult
from .models import load_seq2seq
from .writers import write_jsonl

FILENAME = "logprobs.jsonl"

_DIRECTION_FIELDS = {
    "src_to_sys": ("source", "system"),
    "ref_to_sys": ("reference", "system"),
    "sys_to_ref": ("system", "reference"),
}


def _eos_id(model, tokenizer) -> int:
    for candidate in (model.config.eos_token_id,
                      getattr(tokenizer, "eos_token_id", None),
                      getattr(tokenizer, "sep_token_id", None)):
        if candidate is not None:
            return int(candidate)
    raise ModelLoadError("model has no end-of-sequence token")


def _teacher_forced(model, tokenizer, conditioning: str,
                    target: str) -> tuple[list[str], list[float]]:
    import torch

    cond_ids = tokenizer(conditioning, add_special_tokens=True,
                         truncation=True)["input_ids"]
    label_ids = tokenizer(target, add_special_tokens=False)["input_ids"]
    label_ids = label_ids + [_eos_id(model, tokenizer)]
    input_ids = torch.tensor([cond_ids])
    labels = torch.tensor([label_ids])
    with torch.no_grad():
        logits = model(input_ids=input_ids,
                       attention_mask=torch.ones_like(input_ids),
                       labels=labels).logits
    logprobs = logits[0].log_softmax(-1).gather(1, labels[0].unsqueeze(1))
    tokens = tokenizer.convert_ids_to_tokens(label_ids)
    return tokens, [float(x) for x in logprobs.squeeze(1)]


def export_logprobs(job: ExportJob) -> ExportResult:
    """Write logprobs.jsonl for every (pair, direction) of the job."""
    tokenizer, model = load_seq2seq(job.model)
    pairs = load_pairs(job.dataset)

    records: list[dict] = []
    for pair in pairs:
        for direction in job.directions:
            cond_field, target_field = _DIRECTION_FIELDS[direction]
            conditioning = getattr(pair, cond_field)
            if not conditioning:
                raise DatasetError(f"pair {pair.pair_id!r} has no "
                                   f"{cond_field} text for direction {direction}")
            tokens, logprobs = _teacher_forced(model, tokenizer, conditioning,
                                               getattr(pair, target_field))
            records.append({
                "pair_id": pair.pair_id,
                "direction": direction,
                "target_tokens": tokens,
                "logprobs": logprobs,
                "model": job.model,
            })

    os.makedirs(job.out_dir, exist_ok=True)
    out_path = os.path.join(job.out_dir, FILENAME)
    write_jsonl(out_path, records)
    return ExportResult(path=out_path, n_records=len(records))
