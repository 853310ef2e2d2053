"""Minimal reader for the evaluation dataset JSONL format.

The exporter consumes the scoring toolkit's file formats only.  A dataset
row carries ``pair_id``, ``reference``, ``system``, and optionally
``source``; other keys are ignored.  Pair ids must be unique and the
reference and system texts non-empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DatasetError


@dataclass(frozen=True)
class NotePair:
    """One evaluation unit: reference and system notes, optional source."""

    pair_id: str
    reference: str
    system: str
    source: str = ""


def load_pairs(path: str) -> list[NotePair]:
    """Read dataset JSONL rows in file order."""
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise DatasetError(str(exc), None, path) from None
    pairs: list[NotePair] = []
    seen: set[str] = set()
    with f:
        for line_no, raw in enumerate(f, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"invalid JSON: {exc.msg}", line_no, path) from None
            if not isinstance(record, dict):
                raise DatasetError("row must be a JSON object", line_no, path)
            for key in ("pair_id", "reference", "system"):
                if key not in record:
                    raise DatasetError(f"missing key {key!r}", line_no, path)
            pair_id = str(record["pair_id"])
            if not pair_id:
                raise DatasetError("empty pair_id", line_no, path)
            if pair_id in seen:
                raise DatasetError(f"duplicate pair_id {pair_id!r}", line_no, path)
            seen.add(pair_id)
            reference = str(record["reference"])
            system = str(record["system"])
            if not reference or not system:
                raise DatasetError(
                    f"pair {pair_id!r}: reference and system must be non-empty",
                    line_no, path)
            pairs.append(NotePair(pair_id=pair_id, reference=reference,
                                  system=system,
                                  source=str(record.get("source", "") or "")))
    if not pairs:
        raise DatasetError("dataset has no pairs", None, path)
    return pairs
