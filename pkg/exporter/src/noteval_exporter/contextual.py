"""Contextual embedding export.

One JSONL record per (pair_id, side): the model's content subwords (special
tokens stripped) and one hidden-state row per subword.  Documents longer
than the window are encoded in overlapping windows whose starts sit at
stride multiples; where windows overlap, the earlier window's rows are
kept, so every subword position gets exactly one vector.  The model id,
resolved layer index, and window spans ride along as extra record keys the
consumer ignores.
"""

from __future__ import annotations

import os

from .dataset import load_pairs
from .errors import SequenceTooLong
from .jobs import ExportJob, ExportResult
from .models import load_encoder, require_window_capacity, resolve_layer
from .windows import window_spans
from .writers import write_jsonl

FILENAME = "contextual.jsonl"


def _encode_window(model, tokenizer, chunk_ids: list[int], layer_index: int):
    """Hidden-state rows for the chunk positions, specials excluded."""
    import torch

    cls_id = getattr(tokenizer, "cls_token_id", None)
    sep_id = getattr(tokenizer, "sep_token_id", None)
    offset = 0
    ids = list(chunk_ids)
    if cls_id is not None and sep_id is not None:
        ids = [cls_id] + ids + [sep_id]
        offset = 1
    input_ids = torch.tensor([ids])
    with torch.no_grad():
        out = model(input_ids=input_ids,
                    attention_mask=torch.ones_like(input_ids),
                    output_hidden_states=True)
    hidden = out.hidden_states[layer_index][0]
    return hidden[offset:offset + len(chunk_ids)].tolist()


def export_contextual(job: ExportJob) -> ExportResult:
    """Write contextual.jsonl for every (pair, side) of the dataset."""
    tokenizer, model = load_encoder(job.model)
    if job.window:
        require_window_capacity(tokenizer, job.max_len)
    layer_index = resolve_layer(job.layer, model.config.num_hidden_layers)
    pairs = load_pairs(job.dataset)

    # total input cap including the two special positions added per window
    n_specials = 2 if (getattr(tokenizer, "cls_token_id", None) is not None
                       and getattr(tokenizer, "sep_token_id", None) is not None) else 0
    hard_limit = int(getattr(tokenizer, "model_max_length", 0) or 0) - n_specials

    records: list[dict] = []
    skipped: list[str] = []
    for pair in pairs:
        for side, text in (("reference", pair.reference), ("system", pair.system)):
            ids = tokenizer(text, add_special_tokens=False)["input_ids"]
            if not ids:
                skipped.append(f"{pair.pair_id}/{side}")
                continue
            if job.window:
                spans = window_spans(len(ids), job.max_len, job.overlap)
            else:
                if hard_limit > 0 and len(ids) > hard_limit:
                    raise SequenceTooLong(
                        f"pair {pair.pair_id!r} side {side}: {len(ids)} subwords "
                        f"exceed the model limit {hard_limit} and windowing is "
                        f"disabled")
                spans = [(0, len(ids))]
            rows: list[list[float] | None] = [None] * len(ids)
            for start, end in spans:
                window_rows = _encode_window(model, tokenizer, ids[start:end],
                                             layer_index)
                for position in range(start, end):
                    if rows[position] is None:
                        rows[position] = window_rows[position - start]
            records.append({
                "pair_id": pair.pair_id,
                "side": side,
                "tokens": tokenizer.convert_ids_to_tokens(ids),
                "vectors": rows,
                "model": job.model,
                "layer": layer_index,
                "windows": [[start, end] for start, end in spans],
            })

    os.makedirs(job.out_dir, exist_ok=True)
    out_path = os.path.join(job.out_dir, FILENAME)
    write_jsonl(out_path, records)
    return ExportResult(path=out_path, n_records=len(records),
                        skipped=tuple(skipped))
