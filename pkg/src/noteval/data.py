"""Core data model and file ingestion.

Defines the summary-pair dataset, the two human-annotation records (fact
counts and key-phrase spans), and external score columns, together with
loaders and serializers for the on-disk formats:

* dataset JSONL/CSV with keys ``pair_id, dataset_id, section, source,
  reference, system``
* fact-annotation JSONL with keys ``pair_id, annotator_id, correct,
  incorrect, hallucinated, omitted, reference_facts``
* key-phrase JSONL with ``hallucinations: [{start, end, label}]`` and
  ``omissions: [{pos, note}]``
* score-column CSV whose header row is ``<metric_name>,<higher|lower>``
  followed by ``pair_id,value`` rows

Ingestion is total-or-error: anything returned satisfies every invariant of
its type, otherwise a :mod:`noteval.errors` exception is raised.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
from dataclasses import dataclass, field

from .errors import (
    CountInconsistent,
    DuplicateId,
    MissingField,
    NaNValue,
    NegativeCount,
    ParseError,
    UnknownPair,
)


class Section(enum.Enum):
    HPI = "HPI"
    EXAM = "EXAM"
    RESULTS = "RESULTS"
    ASSESSMENT = "ASSESSMENT"
    OTHER = "OTHER"


class AnnotationKind(enum.Enum):
    FACTS = "FACTS"
    KEY_PHRASES = "KEY_PHRASES"
    NONE = "NONE"


@dataclass(frozen=True)
class SummaryPair:
    """One evaluation unit: a source document with reference and system notes.

    ``source`` may be empty (e.g. radiology pairs that score reference
    against system only); ``reference`` and ``system`` must not be.
    """

    pair_id: str
    reference: str
    system: str
    source: str = ""
    dataset_id: str = ""
    section: Section | None = None


@dataclass(frozen=True)
class Dataset:
    dataset_id: str
    pairs: tuple[SummaryPair, ...]
    annotation_kind: AnnotationKind = AnnotationKind.NONE

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def pair_ids(self) -> list[str]:
        return [p.pair_id for p in self.pairs]

    def by_id(self, pair_id: str) -> SummaryPair:
        for p in self.pairs:
            if p.pair_id == pair_id:
                return p
        raise UnknownPair(pair_id)


@dataclass(frozen=True)
class FactAnnotation:
    """Per-pair fact counts from one annotator.

    ``reference_facts`` is the total number of fact units in the reference,
    so it bounds both ``correct_facts`` and ``omitted_facts``.
    """

    pair_id: str
    annotator_id: str
    correct_facts: int
    incorrect_facts: int
    hallucinated_facts: int
    omitted_facts: int
    reference_facts: int

    def __post_init__(self) -> None:
        for name in ("correct_facts", "incorrect_facts", "hallucinated_facts",
                     "omitted_facts", "reference_facts"):
            value = getattr(self, name)
            if value < 0:
                raise NegativeCount(name, value)
        if self.correct_facts > self.reference_facts:
            raise CountInconsistent(
                f"pair {self.pair_id!r}: correct_facts {self.correct_facts} exceeds "
                f"reference_facts {self.reference_facts}")
        if self.omitted_facts > self.reference_facts:
            raise CountInconsistent(
                f"pair {self.pair_id!r}: omitted_facts {self.omitted_facts} exceeds "
                f"reference_facts {self.reference_facts}")


@dataclass(frozen=True)
class KeyPhraseAnnotation:
    """Span-level highlights: hallucinated spans in the system text plus
    omission markers (insertion points where reference content is missing)."""

    pair_id: str
    annotator_id: str
    hallucinated_spans: tuple[tuple[int, int, str], ...]
    omission_markers: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        for start, end, _label in self.hallucinated_spans:
            if not (0 <= start < end):
                raise CountInconsistent(
                    f"pair {self.pair_id!r}: span ({start}, {end}) must satisfy 0 <= start < end")
        for pos, _note in self.omission_markers:
            if pos < 0:
                raise NegativeCount("omission position", pos)


@dataclass
class ScoreColumn:
    """A named per-pair score map with its comparison direction."""

    metric_name: str
    values: dict[str, float] = field(default_factory=dict)
    higher_is_better: bool = True

    def __post_init__(self) -> None:
        for pair_id, value in self.values.items():
            if not math.isfinite(value):
                raise NaNValue(pair_id)

    def coverage(self, dataset: Dataset) -> tuple[list[str], list[str]]:
        """(covered, missing) pair ids relative to ``dataset``, in file order."""
        covered = [pid for pid in dataset.pair_ids() if pid in self.values]
        missing = [pid for pid in dataset.pair_ids() if pid not in self.values]
        return covered, missing

    def validate_against(self, dataset: Dataset) -> None:
        known = set(dataset.pair_ids())
        for pid in self.values:
            if pid not in known:
                raise UnknownPair(pid)


# ---------------------------------------------------------------------------
# dataset loading

_DATASET_FIELDS = ("pair_id", "dataset_id", "section", "source", "reference", "system")


def _pair_from_record(record: dict, line: int, path: str) -> SummaryPair:
    for required in ("pair_id", "reference", "system"):
        if required not in record or record[required] is None:
            raise MissingField(required, line)
    section_raw = record.get("section")
    section = None
    if section_raw not in (None, ""):
        try:
            section = Section[str(section_raw).upper()]
        except KeyError:
            raise ParseError(f"unknown section {section_raw!r}", line, path) from None
    pair = SummaryPair(
        pair_id=str(record["pair_id"]),
        reference=str(record["reference"]),
        system=str(record["system"]),
        source=str(record.get("source") or ""),
        dataset_id=str(record.get("dataset_id") or ""),
        section=section,
    )
    if not pair.reference:
        raise ParseError(f"pair {pair.pair_id!r}: reference text is empty", line, path)
    if not pair.system:
        raise ParseError(f"pair {pair.pair_id!r}: system text is empty", line, path)
    return pair


class Format(enum.Enum):
    JSONL = "jsonl"
    CSV = "csv"


def load_dataset(path: str, format: Format | str = Format.JSONL) -> Dataset:
    """Load a dataset file, preserving the file's pair order."""
    format = Format(format) if not isinstance(format, Format) else format
    pairs: list[SummaryPair] = []
    seen: set[str] = set()
    if format is Format.JSONL:
        records = _read_jsonl(path)
    else:
        records = _read_csv_records(path)
    for line, record in records:
        pair = _pair_from_record(record, line, path)
        if pair.pair_id in seen:
            raise DuplicateId(pair.pair_id)
        seen.add(pair.pair_id)
        pairs.append(pair)
    dataset_id = pairs[0].dataset_id if pairs else ""
    for pair in pairs:
        if pair.dataset_id != dataset_id:
            raise ParseError(
                f"pair {pair.pair_id!r}: dataset_id {pair.dataset_id!r} differs from "
                f"{dataset_id!r}", None, path)
    return Dataset(dataset_id=dataset_id, pairs=tuple(pairs))


def save_dataset(dataset: Dataset, path: str, format: Format | str = Format.JSONL) -> None:
    format = Format(format) if not isinstance(format, Format) else format
    if format is Format.JSONL:
        with open(path, "w", encoding="utf-8", newline="") as f:
            for pair in dataset.pairs:
                f.write(json.dumps(_pair_to_record(pair), ensure_ascii=False) + "\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(_DATASET_FIELDS)
            for pair in dataset.pairs:
                record = _pair_to_record(pair)
                writer.writerow([record[k] for k in _DATASET_FIELDS])


def _pair_to_record(pair: SummaryPair) -> dict:
    return {
        "pair_id": pair.pair_id,
        "dataset_id": pair.dataset_id,
        "section": pair.section.value if pair.section else "",
        "source": pair.source,
        "reference": pair.reference,
        "system": pair.system,
    }


def _open_text(path: str):
    try:
        return open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ParseError(str(exc), None, path) from None


def _read_jsonl(path: str):
    out = []
    with _open_text(path) as f:
        for line_no, raw in enumerate(f, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", line_no, path) from None
            if not isinstance(record, dict):
                raise ParseError("record is not an object", line_no, path)
            out.append((line_no, record))
    return out


def _read_csv_records(path: str):
    out = []
    with _open_text(path) as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            return out
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(row)}", row_no, path)
            out.append((row_no, dict(zip(header, row))))
    return out


# ---------------------------------------------------------------------------
# annotation loading

def load_fact_annotations(path: str, dataset: Dataset | None = None) -> list[FactAnnotation]:
    """Load fact-count annotations; multiple annotators per pair are kept.

    If ``dataset`` is given, every record must name a pair it contains.
    """
    known = set(dataset.pair_ids()) if dataset is not None else None
    annotations: list[FactAnnotation] = []
    for line, record in _read_jsonl(path):
        for required in ("pair_id", "annotator_id", "correct", "incorrect",
                         "hallucinated", "omitted", "reference_facts"):
            if required not in record:
                raise MissingField(required, line)
        counts = {}
        for key in ("correct", "incorrect", "hallucinated", "omitted", "reference_facts"):
            value = record[key]
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParseError(f"field {key!r} must be an integer, got {value!r}",
                                 line, path)
            counts[key] = value
        pair_id = str(record["pair_id"])
        if known is not None and pair_id not in known:
            raise UnknownPair(pair_id)
        annotations.append(FactAnnotation(
            pair_id=pair_id,
            annotator_id=str(record["annotator_id"]),
            correct_facts=counts["correct"],
            incorrect_facts=counts["incorrect"],
            hallucinated_facts=counts["hallucinated"],
            omitted_facts=counts["omitted"],
            reference_facts=counts["reference_facts"],
        ))
    return annotations


def load_keyphrase_annotations(path: str,
                               dataset: Dataset | None = None) -> list[KeyPhraseAnnotation]:
    """Load key-phrase annotations (hallucinated spans + omission markers).

    If ``dataset`` is given, pair ids are checked and spans must lie within
    the pair's system text.
    """
    pairs = {p.pair_id: p for p in dataset.pairs} if dataset is not None else None
    annotations: list[KeyPhraseAnnotation] = []
    for line, record in _read_jsonl(path):
        for required in ("pair_id", "annotator_id"):
            if required not in record:
                raise MissingField(required, line)
        pair_id = str(record["pair_id"])
        if pairs is not None and pair_id not in pairs:
            raise UnknownPair(pair_id)
        spans = []
        for item in record.get("hallucinations", []):
            if "start" not in item or "end" not in item:
                raise MissingField("start/end", line)
            spans.append((int(item["start"]), int(item["end"]),
                          str(item.get("label", ""))))
        markers = []
        for item in record.get("omissions", []):
            if "pos" not in item:
                raise MissingField("pos", line)
            markers.append((int(item["pos"]), str(item.get("note", ""))))
        annotation = KeyPhraseAnnotation(
            pair_id=pair_id,
            annotator_id=str(record["annotator_id"]),
            hallucinated_spans=tuple(spans),
            omission_markers=tuple(markers),
        )
        if pairs is not None:
            system_len = len(pairs[pair_id].system)
            for start, end, _label in annotation.hallucinated_spans:
                if end > system_len:
                    raise CountInconsistent(
                        f"pair {pair_id!r}: span ({start}, {end}) exceeds system text "
                        f"length {system_len}")
        annotations.append(annotation)
    return annotations


# ---------------------------------------------------------------------------
# score columns

def load_score_column(path: str) -> ScoreColumn:
    """Load a two-column score CSV.

    The header row carries the metric name and direction, e.g.
    ``bleurt,higher``; each following row is ``pair_id,value``.
    """
    with _open_text(path) as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty score file", None, path) from None
        if len(header) != 2:
            raise ParseError(f"expected 2 header fields, got {len(header)}", 1, path)
        metric_name, direction = header[0].strip(), header[1].strip().lower()
        if direction not in ("higher", "lower"):
            raise ParseError(f"direction must be 'higher' or 'lower', got "
                             f"{header[1]!r}", 1, path)
        values: dict[str, float] = {}
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ParseError(f"expected 2 fields, got {len(row)}", line_no, path)
            pair_id = row[0]
            try:
                value = float(row[1])
            except ValueError:
                raise ParseError(f"bad score value {row[1]!r}", line_no, path) from None
            if not math.isfinite(value):
                raise NaNValue(pair_id)
            if pair_id in values:
                raise DuplicateId(pair_id)
            values[pair_id] = value
    return ScoreColumn(metric_name=metric_name, values=values,
                       higher_is_better=(direction == "higher"))


def save_score_column(column: ScoreColumn, path: str) -> None:
    """Write a score column in the two-column CSV format (atomically)."""
    direction = "higher" if column.higher_is_better else "lower"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([column.metric_name, direction])
    for pair_id in column.values:
        writer.writerow([pair_id, repr(column.values[pair_id])])
    _atomic_write(path, buf.getvalue())


def _atomic_write(path: str, content: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        f.write(content)
    os.replace(tmp, path)
