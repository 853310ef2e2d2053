"""Atomic writers for the scoring toolkit's file formats.

Files land via temp + rename so concurrent per-dataset jobs writing into
distinct directories never expose half-written outputs.  Floats serialize
via repr (shortest round-trip form), so a re-read reproduces the exact
values.
"""

from __future__ import annotations

import csv
import io
import json
import os


def atomic_write_text(path: str, content: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        f.write(content)
    os.replace(tmp, path)


def write_jsonl(path: str, records: list[dict]) -> None:
    """One compact JSON object per line, in record order."""
    lines = [json.dumps(record, ensure_ascii=False) for record in records]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def write_score_csv(path: str, metric_name: str, values: dict[str, float],
                    higher_is_better: bool = True) -> None:
    """Two-column score CSV: header ``metric,higher|lower``, then pair rows."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([metric_name, "higher" if higher_is_better else "lower"])
    for pair_id, value in values.items():
        writer.writerow([pair_id, repr(value)])
    atomic_write_text(path, buf.getvalue())
