"""Meta-evaluation: z-score ensembles, correlation reports, agreement.

Metrics are compared by how well they track human reference scores.  For a
score table (metric name -> per-pair column) and a set of reference
criteria, the correlation report holds one Pearson coefficient per
(metric, criterion) cell plus the aggregate meta-score per metric.
Ensembles average z-scored member columns, which makes them invariant
under positive affine rescaling of any member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .data import FactAnnotation, ScoreColumn
from .errors import (
    DegenerateColumn,
    DegenerateInput,
    InsufficientAnnotators,
    LengthMismatch,
    MissingMember,
    NoSharedMetrics,
)
from .refscores import aggregate_score

# ---------------------------------------------------------------------------
# score tables and z-scores

@dataclass
class ScoreTable:
    """Ordered collection of named score columns for one dataset."""

    columns: dict[str, ScoreColumn] = field(default_factory=dict)

    def add(self, column: ScoreColumn) -> None:
        self.columns[column.metric_name] = column

    def __contains__(self, name: str) -> bool:
        return name in self.columns

    def __getitem__(self, name: str) -> ScoreColumn:
        if name not in self.columns:
            raise MissingMember(name)
        return self.columns[name]

    def metric_names(self) -> list[str]:
        return list(self.columns)


def zscore_column(col: ScoreColumn, population: bool = True) -> ScoreColumn:
    """Standardize a column to mean 0, standard deviation 1.

    The deviation is population-style by default (divide by n, matching a
    statistic taken over the whole summaries set); ``population=False``
    switches to the sample estimator (n - 1).  Constant or too-short
    columns have no z-scores.
    """
    values = list(col.values.values())
    n = len(values)
    if n < 2:
        raise DegenerateColumn(col.metric_name, f"needs >= 2 values, has {n}")
    total = 0.0
    for x in values:
        total += x
    mean = total / n
    ss = 0.0
    for x in values:
        d = x - mean
        ss += d * d
    sigma = math.sqrt(ss / n) if population else math.sqrt(ss / (n - 1))
    if sigma == 0.0:
        raise DegenerateColumn(col.metric_name)
    zvalues = {pid: (x - mean) / sigma for pid, x in col.values.items()}
    return ScoreColumn(metric_name=col.metric_name, values=zvalues,
                       higher_is_better=col.higher_is_better)


# ---------------------------------------------------------------------------
# ensembles

@dataclass(frozen=True)
class EnsembleConfig:
    name: str
    member_metrics: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.member_metrics) < 2:
            raise DegenerateInput("an ensemble needs at least 2 members")


# Built-in combinations: a concept metric, a lexical recall, and a learned
# metric (greedy-matching recall for comb1, an external column for comb2).
ENSEMBLE_PRESETS = {
    "mist-comb1": EnsembleConfig("mist-comb1", ("mist", "rouge-1-r", "bertscore-r")),
    "mist-comb2": EnsembleConfig("mist-comb2", ("mist", "rouge-1-r", "bleurt")),
}


def ensemble(table: ScoreTable, config: EnsembleConfig,
             population: bool = True) -> ScoreColumn:
    """Mean of member z-scores, over pairs covered by every member.

    Each member is z-scored over its own coverage; the output covers the
    intersection.  Missing member columns fail before any arithmetic.
    """
    zcols = [zscore_column(table[name], population=population)
             for name in config.member_metrics]
    shared = [pid for pid in zcols[0].values
              if all(pid in z.values for z in zcols[1:])]
    values: dict[str, float] = {}
    for pid in shared:
        total = 0.0
        for z in zcols:
            total += z.values[pid]
        values[pid] = total / len(zcols)
    return ScoreColumn(metric_name=config.name, values=values, higher_is_better=True)


# ---------------------------------------------------------------------------
# correlation

def pearson(x: list[float], y: list[float]) -> float:
    """Pearson correlation coefficient, clamped into [-1, 1]."""
    if len(x) != len(y):
        raise LengthMismatch(f"{len(x)} vs {len(y)} values")
    n = len(x)
    if n < 2:
        raise DegenerateInput(f"need >= 2 points, got {n}")
    mx = 0.0
    my = 0.0
    for a, b in zip(x, y):
        mx += a
        my += b
    mx /= n
    my /= n
    num = 0.0
    ssx = 0.0
    ssy = 0.0
    for a, b in zip(x, y):
        dx = a - mx
        dy = b - my
        num += dx * dy
        ssx += dx * dx
        ssy += dy * dy
    if ssx == 0.0 or ssy == 0.0:
        raise DegenerateInput("constant input vector")
    r = num / (math.sqrt(ssx) * math.sqrt(ssy))
    return max(-1.0, min(1.0, r))


FACT_CRITERIA = ("factual_p", "factual_r", "factual_f1", "halluc_rate",
                 "omission_rate")
KEYPHRASE_CRITERIA = ("halluc_count", "omission_count")

# Aggregate inputs: correlation with factual F1 (rewarded) and with the
# hallucination/omission rates (penalized).
_AGG_F, _AGG_H, _AGG_O = "factual_f1", "halluc_rate", "omission_rate"


@dataclass(frozen=True)
class Cell:
    r: float | None
    n_pairs: int
    n_reports: int = 1
    note: str = ""

    @property
    def defined(self) -> bool:
        return self.r is not None


@dataclass(frozen=True)
class CorrelationReport:
    dataset_id: str
    metrics: tuple[str, ...]
    criteria: tuple[str, ...]
    cells: dict[tuple[str, str], Cell]
    aggregate: dict[str, float | None]

    @property
    def has_aggregate(self) -> bool:
        return all(c in self.criteria for c in (_AGG_F, _AGG_H, _AGG_O))


def correlation_report(table: ScoreTable, refs: dict[str, ScoreColumn],
                       dataset_id: str = "") -> CorrelationReport:
    """Pearson correlation of every metric column against every criterion.

    A cell uses the pairs present in both columns; cells with fewer than two
    shared pairs or a constant side are recorded as undefined rather than
    aborting the table.  When the three aggregate inputs (factual F1,
    hallucination rate, omission rate) are all defined for a metric, its
    aggregate meta-score is filled in.
    """
    criteria = tuple(refs)
    metrics = tuple(table.metric_names())
    cells: dict[tuple[str, str], Cell] = {}
    aggregate: dict[str, float | None] = {}
    for metric in metrics:
        col = table[metric]
        for criterion in criteria:
            ref = refs[criterion]
            shared = [pid for pid in col.values if pid in ref.values]
            if len(shared) < 2:
                cells[(metric, criterion)] = Cell(None, len(shared),
                                                  note="fewer than 2 shared pairs")
                continue
            try:
                r = pearson([col.values[p] for p in shared],
                            [ref.values[p] for p in shared])
            except DegenerateInput as exc:
                cells[(metric, criterion)] = Cell(None, len(shared), note=str(exc))
                continue
            cells[(metric, criterion)] = Cell(r, len(shared))
        agg_cells = [cells.get((metric, c)) for c in (_AGG_F, _AGG_H, _AGG_O)]
        if all(c is not None and c.defined for c in agg_cells):
            aggregate[metric] = aggregate_score(agg_cells[0].r, agg_cells[1].r,
                                                agg_cells[2].r)
        else:
            aggregate[metric] = None
    return CorrelationReport(dataset_id=dataset_id, metrics=metrics,
                             criteria=criteria, cells=cells, aggregate=aggregate)


def average_reports(reports: list[CorrelationReport]) -> CorrelationReport:
    """Unweighted per-cell mean over reports; aggregate recomputed after.

    Metrics are the ones shared by every report (in the first report's
    order); a cell's mean runs over the reports where it is defined, with
    the contributing report count recorded.
    """
    if not reports:
        raise NoSharedMetrics("no reports to average")
    criteria = reports[0].criteria
    for report in reports[1:]:
        if report.criteria != criteria:
            raise NoSharedMetrics(
                f"criteria differ: {report.criteria} vs {criteria}")
    shared = [m for m in reports[0].metrics
              if all(m in r.metrics for r in reports[1:])]
    if not shared:
        raise NoSharedMetrics("reports have no metric rows in common")
    cells: dict[tuple[str, str], Cell] = {}
    aggregate: dict[str, float | None] = {}
    for metric in shared:
        for criterion in criteria:
            defined = [r.cells[(metric, criterion)] for r in reports
                       if r.cells.get((metric, criterion), Cell(None, 0)).defined]
            if not defined:
                cells[(metric, criterion)] = Cell(None, 0, n_reports=0,
                                                  note="undefined in all reports")
                continue
            total = 0.0
            for cell in defined:
                total += cell.r
            cells[(metric, criterion)] = Cell(total / len(defined),
                                              sum(c.n_pairs for c in defined),
                                              n_reports=len(defined))
        agg_cells = [cells.get((metric, c)) for c in (_AGG_F, _AGG_H, _AGG_O)]
        if all(c is not None and c.defined for c in agg_cells):
            aggregate[metric] = aggregate_score(agg_cells[0].r, agg_cells[1].r,
                                                agg_cells[2].r)
        else:
            aggregate[metric] = None
    return CorrelationReport(dataset_id="average", metrics=tuple(shared),
                             criteria=criteria, cells=cells, aggregate=aggregate)


# ---------------------------------------------------------------------------
# inter-annotator agreement

def cohen_kappa(a: list[int], b: list[int]) -> float:
    """Cohen's kappa with each distinct count value as its own category."""
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} items")
    if not a:
        raise DegenerateInput("no items")
    n = len(a)
    po = sum(1 for x, y in zip(a, b) if x == y) / n
    labels = set(a) | set(b)
    pe = 0.0
    for label in labels:
        pe += (a.count(label) / n) * (b.count(label) / n)
    if pe == 1.0:
        return 1.0 if po == 1.0 else 0.0
    return (po - pe) / (1.0 - pe)


def f1_tolerant(a: list[int], b: list[int], tol: int = 0) -> float:
    """Micro-F1 over paired counts, forgiving |a_i - b_i| up to ``tol``.

    Per item, true positives are min(a_i, b_i) + min(tol, |a_i - b_i|),
    never more than max(a_i, b_i).  Precision divides by max(sum a, sum TP)
    and recall by max(sum b, sum TP) so both stay within [0, 1].
    """
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} items")
    tp = 0
    for x, y in zip(a, b):
        tp += min(min(x, y) + min(tol, abs(x - y)), max(x, y))
    total_a = sum(a)
    total_b = sum(b)
    if tp == 0:
        return 1.0 if total_a == 0 and total_b == 0 else 0.0
    p = tp / max(total_a, tp)
    r = tp / max(total_b, tp)
    return 2 * p * r / (p + r)


def iaa(a: list[int], b: list[int],
        tolerances: tuple[int, ...] = (0, 1, 2)) -> dict[str, float | None]:
    """Agreement measures between two annotators' per-item counts.

    Returns kappa, micro-F1 at each tolerance (tolerance 0 is plain "f1"),
    and Pearson over the paired counts (None when a side is constant).
    """
    out: dict[str, float | None] = {"kappa": cohen_kappa(a, b)}
    for tol in tolerances:
        key = "f1" if tol == 0 else f"f1(tol={tol})"
        out[key] = f1_tolerant(a, b, tol)
    try:
        out["pearson"] = pearson([float(x) for x in a], [float(y) for y in b])
    except DegenerateInput:
        out["pearson"] = None
    return out


# Annotation fields reported in the agreement table, with readable names.
IAA_FIELDS = (
    ("crit-omissions", "omitted_facts"),
    ("hallucinations", "hallucinated_facts"),
    ("correct-facts", "correct_facts"),
    ("incorrect-facts", "incorrect_facts"),
)


def iaa_table(annotations: list[FactAnnotation],
              tolerances: tuple[int, ...] = (0, 1, 2)) -> dict[str, dict[str, float | None]]:
    """Averaged pairwise agreement per annotation field.

    Every unordered annotator pair sharing at least two annotated pairs
    contributes one measurement per field; cells average the defined
    measurements.  Fewer than two such annotator pairs is an error.
    """
    by_annotator: dict[str, dict[str, FactAnnotation]] = {}
    for ann in annotations:
        by_annotator.setdefault(ann.annotator_id, {})[ann.pair_id] = ann
    annotators = sorted(by_annotator)
    duos = []
    for i in range(len(annotators)):
        for j in range(i + 1, len(annotators)):
            shared = sorted(set(by_annotator[annotators[i]])
                            & set(by_annotator[annotators[j]]))
            if len(shared) >= 2:
                duos.append((annotators[i], annotators[j], shared))
    if not duos:
        raise InsufficientAnnotators(
            "need >= 2 annotators sharing >= 2 annotated pairs")
    table: dict[str, dict[str, float | None]] = {}
    for field_name, attr in IAA_FIELDS:
        per_duo: list[dict[str, float | None]] = []
        for left, right, shared in duos:
            a = [getattr(by_annotator[left][pid], attr) for pid in shared]
            b = [getattr(by_annotator[right][pid], attr) for pid in shared]
            per_duo.append(iaa(a, b, tolerances))
        columns = per_duo[0].keys()
        row: dict[str, float | None] = {}
        for col in columns:
            defined = [d[col] for d in per_duo if d[col] is not None]
            row[col] = sum(defined) / len(defined) if defined else None
        table[field_name] = row
    return table
