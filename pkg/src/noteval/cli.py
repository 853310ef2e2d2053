"""Command-line pipeline: ingestion -> metrics -> ensembles -> reports.

Subcommands:

* ``score``      compute metric columns for a dataset, one CSV per column
* ``refscores``  turn human annotations into reference-criterion columns
* ``ensemble``   average z-scored member columns (presets or custom)
* ``correlate``  Pearson correlation report of metrics vs criteria
* ``average``    unweighted mean of several correlation reports
* ``iaa``        averaged pairwise inter-annotator agreement
* ``validate``   structural validation of any supported file format

Options come from flags or a JSON config file (``--config``); flags win.
Exit codes: 0 success, 1 configuration error, 2 data error, 3 completed
with per-pair failures (details in the run manifest).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import glob
import hashlib
import io
import json
import os
import sys

from .analysis import (
    ENSEMBLE_PRESETS,
    Cell,
    CorrelationReport,
    EnsembleConfig,
    ScoreTable,
    average_reports,
    correlation_report,
    ensemble,
    iaa_table,
)
from .concepts import MistMode, link_concepts, load_lexicon, mist
from .data import (
    Dataset,
    Format,
    ScoreColumn,
    load_dataset,
    load_fact_annotations,
    load_keyphrase_annotations,
    load_score_column,
    save_score_column,
)
from .embeddings import (
    ContextualFileProvider,
    StaticProvider,
    StoreKind,
    load_store,
)
from .errors import ConfigError, NoOverlap, NotevalError, ParseError
from .lexical import rouge_l, rouge_n
from .likelihood import (
    Direction,
    FileLogProbProvider,
    SumNormalize,
    bartscore,
    med_bartscore,
    score_logprobs,
    train_ngram_lm,
)
from .matching import Normalize, bert_prf, med_bertscore, medical_weights
from .refscores import (
    Combine,
    LOWER_IS_BETTER,
    fact_score_table,
    keyphrase_score_table,
)
from .text import Normalization, tokenize

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_PARTIAL = 3

KNOWN_METRICS = ("rouge-1", "rouge-2", "rouge-l", "bertscore", "medbertscore",
                 "medbertscore-sp", "mist", "bartscore", "medbartscore")

_EMBED_METRICS = {"bertscore", "medbertscore", "medbertscore-sp"}
_LEXICON_METRICS = {"medbertscore", "medbertscore-sp", "mist", "medbartscore"}
_BART_METRICS = {"bartscore", "medbartscore"}


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors map to the config exit code."""

    def error(self, message):
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# config plumbing

def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            cfg = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path}: invalid JSON ({exc.msg})") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"config file {path}: top level must be an object")
    return cfg


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags (flags parse to non-None)."""
    file_cfg = _load_config_file(getattr(args, "config", None))
    merged = dict(defaults)
    for key, value in file_cfg.items():
        if key not in defaults:
            raise ConfigError(f"unknown config key {key!r}")
        merged[key] = value
    for key in defaults:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
    return merged


def _require(cfg: dict, key: str) -> str:
    if not cfg.get(key):
        raise ConfigError(f"missing required option --{key.replace('_', '-')}")
    return cfg[key]


def _check_path(path: str, what: str) -> str:
    if not os.path.exists(path):
        raise ConfigError(f"{what} file not found: {path}")
    return path


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(outdir: str, command: str, cfg: dict, inputs: list[str],
                    pair_errors: list[dict], outputs: list[str]) -> None:
    config_blob = json.dumps(cfg, sort_keys=True)
    manifest = {
        "command": command,
        "config": cfg,
        "config_hash": hashlib.sha256(config_blob.encode()).hexdigest(),
        "inputs": {path: _sha256(path) for path in sorted(set(inputs))},
        "pair_errors": pair_errors,
        "outputs": sorted(outputs),
    }
    path = os.path.join(outdir, "manifest.json")
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    os.replace(tmp, path)


def _save_column(column: ScoreColumn, outdir: str) -> str:
    filename = f"{column.metric_name}.csv"
    save_score_column(column, os.path.join(outdir, filename))
    return filename


# ---------------------------------------------------------------------------
# score

_SCORE_DEFAULTS = {
    "dataset": None,
    "format": "jsonl",
    "metrics": "rouge-1,rouge-2,rouge-l",
    "tokenizer": "lower_alnum",
    "embeddings": None,
    "contextual": None,
    "kge": None,
    "lexicon": None,
    "logprobs": None,
    "alpha": 1.0,
    "normalize": "weight-sum",
    "bart_normalize": "weight-sum",
    "window": False,
    "max_len": 512,
    "overlap": 100,
    "direction": "ref_to_sys",
    "mist_mode": "recall",
    "lm_order": 2,
    "lm_k": 1.0,
    "jobs": 1,
    "out": None,
}


def _parse_metrics(raw) -> list[str]:
    names = raw if isinstance(raw, list) else [m.strip() for m in str(raw).split(",")]
    names = [m for m in names if m]
    if not names:
        raise ConfigError("no metrics requested")
    for name in names:
        if name not in KNOWN_METRICS:
            raise ConfigError(f"unknown metric {name!r} (known: "
                              f"{', '.join(KNOWN_METRICS)})")
    return names


def _tokenizer_mode(cfg: dict) -> Normalization:
    try:
        return Normalization(cfg["tokenizer"])
    except ValueError:
        raise ConfigError(f"unknown tokenizer {cfg['tokenizer']!r}") from None


class _ScoreContext:
    """Validated configuration plus loaded providers for one scoring run."""

    def __init__(self, cfg: dict):
        self.cfg = cfg
        self.metrics = _parse_metrics(cfg["metrics"])
        self.mode = _tokenizer_mode(cfg)
        self.alpha = float(cfg["alpha"])
        try:
            self.normalize = Normalize(cfg["normalize"])
            self.bart_normalize = SumNormalize(cfg["bart_normalize"])
            self.mist_mode = MistMode(cfg["mist_mode"])
            self.direction = Direction(cfg["direction"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        self.max_len = int(cfg["max_len"])
        self.overlap = int(cfg["overlap"])
        if not (self.max_len > self.overlap >= 0):
            raise ConfigError(f"need max_len > overlap >= 0, got "
                              f"{self.max_len}/{self.overlap}")
        self.window = bool(cfg["window"])
        self.inputs = [_check_path(_require(cfg, "dataset"), "dataset")]

        requested = set(self.metrics)
        self._need_embed = bool(requested & _EMBED_METRICS)
        self._need_lexicon = bool(requested & _LEXICON_METRICS)
        self._need_kge = "mist" in requested
        self._need_bart = bool(requested & _BART_METRICS)
        if self._need_embed:
            if cfg["embeddings"] and cfg["contextual"]:
                raise ConfigError("give either --embeddings or --contextual, not both")
            if not cfg["embeddings"] and not cfg["contextual"]:
                raise ConfigError("embedding metrics need --embeddings or --contextual")
            self.inputs.append(_check_path(cfg["embeddings"] or cfg["contextual"],
                                           "embedding"))
        if self._need_lexicon:
            self.inputs.append(_check_path(_require(cfg, "lexicon"), "lexicon"))
        if self._need_kge:
            self.inputs.append(_check_path(_require(cfg, "kge"), "KGE store"))
        if self._need_bart and cfg["logprobs"]:
            self.inputs.append(_check_path(cfg["logprobs"], "logprob"))

        # Loading happens after all pre-flight checks passed.
        self.dataset = load_dataset(cfg["dataset"], Format(cfg["format"]))
        self.embed_provider = None
        if self._need_embed:
            if cfg["contextual"]:
                self.embed_provider = ContextualFileProvider(cfg["contextual"])
            else:
                self.embed_provider = StaticProvider(load_store(cfg["embeddings"]))
        self.lexicon = load_lexicon(cfg["lexicon"]) if self._need_lexicon else None
        self.kge = (load_store(cfg["kge"], StoreKind.CONCEPT)
                    if self._need_kge else None)
        self.logprob_provider = None
        if self._need_bart:
            if cfg["logprobs"]:
                self.logprob_provider = FileLogProbProvider(cfg["logprobs"])
            else:
                self.logprob_provider = self._train_builtin_lm()

    def _train_builtin_lm(self):
        """Unconditional fallback: an n-gram model over the conditioning side
        of every pair (references for *-to-system directions, system texts
        otherwise)."""
        if self.direction is Direction.SYS_TO_REF:
            corpus_texts = [p.system for p in self.dataset.pairs]
        elif self.direction is Direction.SRC_TO_SYS:
            corpus_texts = [p.source for p in self.dataset.pairs]
        else:
            corpus_texts = [p.reference for p in self.dataset.pairs]
        corpus = [tokenize(t, self.mode) for t in corpus_texts]
        return train_ngram_lm(corpus, n=int(self.cfg["lm_order"]),
                              k=float(self.cfg["lm_k"]))

    def column_names(self) -> list[str]:
        names: list[str] = []
        for metric in self.metrics:
            if metric in ("rouge-1", "rouge-2", "rouge-l", "bertscore",
                          "medbertscore", "medbertscore-sp"):
                names += [f"{metric}-p", f"{metric}-r", f"{metric}-f"]
            else:
                names.append(metric)
        return names

    def score_pair(self, pair) -> tuple[dict[str, float], list[tuple[str, str]]]:
        values: dict[str, float] = {}
        errors: list[tuple[str, str]] = []
        sys_tokens = tokenize(pair.system, self.mode)
        ref_tokens = tokenize(pair.reference, self.mode)
        for metric in self.metrics:
            try:
                self._one_metric(metric, pair, sys_tokens, ref_tokens, values)
            except NotevalError as exc:
                errors.append((metric, str(exc)))
        return values, errors

    def _one_metric(self, metric, pair, sys_tokens, ref_tokens, values) -> None:
        if metric == "rouge-1" or metric == "rouge-2":
            prf = rouge_n(sys_tokens, ref_tokens, int(metric[-1]))
        elif metric == "rouge-l":
            prf = rouge_l(sys_tokens, ref_tokens)
        elif metric == "bertscore":
            prf = bert_prf(pair, self.embed_provider, windowed=self.window,
                           max_len=self.max_len, overlap=self.overlap,
                           mode=self.mode)
        elif metric in ("medbertscore", "medbertscore-sp"):
            prf = med_bertscore(pair, self.embed_provider, self.lexicon,
                                alpha=self.alpha,
                                windowed=(metric == "medbertscore-sp"),
                                max_len=self.max_len, overlap=self.overlap,
                                normalize=self.normalize, mode=self.mode)
        elif metric == "mist":
            sys_concepts = link_concepts(sys_tokens, self.lexicon)
            ref_concepts = link_concepts(ref_tokens, self.lexicon)
            values["mist"] = mist(sys_concepts, ref_concepts, self.kge,
                                  self.mist_mode).value
            return
        elif metric in ("bartscore", "medbartscore"):
            target = (ref_tokens if self.direction is Direction.SYS_TO_REF
                      else sys_tokens)
            if hasattr(self.logprob_provider, "lookup"):
                row = score_logprobs(None, self.logprob_provider,
                                     pair_id=pair.pair_id,
                                     direction=self.direction)
            else:
                row = score_logprobs(target, self.logprob_provider,
                                     pair_id=pair.pair_id,
                                     direction=self.direction)
            if metric == "bartscore":
                values["bartscore"] = bartscore(row)
            else:
                weights = medical_weights(list(row.target_tokens), self.lexicon,
                                          self.alpha)
                values["medbartscore"] = med_bartscore(row, weights,
                                                       self.bart_normalize)
            return
        else:  # pragma: no cover - guarded by _parse_metrics
            raise ConfigError(f"unknown metric {metric!r}")
        values[f"{metric}-p"] = prf.precision
        values[f"{metric}-r"] = prf.recall
        values[f"{metric}-f"] = prf.f1


def cmd_score(args) -> int:
    cfg = _merge_config(args, _SCORE_DEFAULTS)
    outdir = _require(cfg, "out")
    ctx = _ScoreContext(cfg)
    os.makedirs(outdir, exist_ok=True)

    jobs = max(1, int(cfg["jobs"]))
    pairs = list(ctx.dataset.pairs)
    if jobs == 1:
        results = [ctx.score_pair(p) for p in pairs]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(ctx.score_pair, pairs))

    columns = {name: ScoreColumn(metric_name=name, values={},
                                 higher_is_better=True)
               for name in ctx.column_names()}
    pair_errors: list[dict] = []
    for pair, (values, errors) in zip(pairs, results):
        for name, value in values.items():
            columns[name].values[pair.pair_id] = value
        for metric, message in errors:
            pair_errors.append({"pair_id": pair.pair_id, "metric": metric,
                                "error": message})

    outputs = [_save_column(col, outdir) for col in columns.values()]
    # The manifest records result-determining configuration only; the jobs
    # bound changes scheduling, never output bytes.
    manifest_cfg = {k: v for k, v in cfg.items() if k != "jobs"}
    _write_manifest(outdir, "score", manifest_cfg, ctx.inputs, pair_errors, outputs)
    for entry in pair_errors:
        print(f"warning: pair {entry['pair_id']} metric {entry['metric']}: "
              f"{entry['error']}", file=sys.stderr)
    print(f"wrote {len(outputs)} column(s) to {outdir}")
    return EXIT_PARTIAL if pair_errors else EXIT_OK


# ---------------------------------------------------------------------------
# refscores

_REFSCORES_DEFAULTS = {
    "dataset": None,
    "format": "jsonl",
    "facts": None,
    "keyphrases": None,
    "combine": "mean",
    "out": None,
}


def cmd_refscores(args) -> int:
    cfg = _merge_config(args, _REFSCORES_DEFAULTS)
    outdir = _require(cfg, "out")
    _check_path(_require(cfg, "dataset"), "dataset")
    if not cfg["facts"] and not cfg["keyphrases"]:
        raise ConfigError("need --facts and/or --keyphrases")
    try:
        combine = Combine(cfg["combine"])
    except ValueError:
        raise ConfigError(f"unknown combine mode {cfg['combine']!r}") from None
    inputs = [cfg["dataset"]]
    for key in ("facts", "keyphrases"):
        if cfg[key]:
            inputs.append(_check_path(cfg[key], key))

    dataset = load_dataset(cfg["dataset"], Format(cfg["format"]))
    tables: dict[str, dict[str, float]] = {}
    if cfg["facts"]:
        annotations = load_fact_annotations(cfg["facts"], dataset)
        tables.update(fact_score_table(annotations, combine))
    if cfg["keyphrases"]:
        annotations = load_keyphrase_annotations(cfg["keyphrases"], dataset)
        pairs = {p.pair_id: p for p in dataset.pairs}
        tables.update(keyphrase_score_table(annotations, pairs, combine))

    os.makedirs(outdir, exist_ok=True)
    outputs = []
    for name, values in tables.items():
        column = ScoreColumn(metric_name=name, values=values,
                             higher_is_better=name not in LOWER_IS_BETTER)
        outputs.append(_save_column(column, outdir))
    _write_manifest(outdir, "refscores", cfg, inputs, [], outputs)
    print(f"wrote {len(outputs)} criterion column(s) to {outdir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# ensemble

_ENSEMBLE_DEFAULTS = {
    "scores": None,
    "preset": None,
    "name": None,
    "members": None,
    "sample_sigma": False,
    "out": None,
}


def _score_paths(raw) -> list[str]:
    paths = raw if isinstance(raw, list) else [p.strip() for p in str(raw).split(",")]
    expanded: list[str] = []
    for path in paths:
        if not path:
            continue
        if os.path.isdir(path):
            expanded.extend(sorted(glob.glob(os.path.join(path, "*.csv"))))
        else:
            expanded.append(_check_path(path, "score"))
    if not expanded:
        raise ConfigError("no score CSV files found")
    return expanded


def _load_score_table(paths: list[str]) -> ScoreTable:
    table = ScoreTable()
    for path in paths:
        table.add(load_score_column(path))
    return table


def cmd_ensemble(args) -> int:
    cfg = _merge_config(args, _ENSEMBLE_DEFAULTS)
    outdir = _require(cfg, "out")
    paths = _score_paths(_require(cfg, "scores"))
    if cfg["preset"]:
        if cfg["preset"] not in ENSEMBLE_PRESETS:
            raise ConfigError(f"unknown preset {cfg['preset']!r} (known: "
                              f"{', '.join(sorted(ENSEMBLE_PRESETS))})")
        config = ENSEMBLE_PRESETS[cfg["preset"]]
    else:
        if not cfg["name"] or not cfg["members"]:
            raise ConfigError("need --preset, or --name with --members")
        members = [m.strip() for m in str(cfg["members"]).split(",") if m.strip()]
        config = EnsembleConfig(cfg["name"], tuple(members))

    table = _load_score_table(paths)
    column = ensemble(table, config, population=not cfg["sample_sigma"])
    os.makedirs(outdir, exist_ok=True)
    outputs = [_save_column(column, outdir)]
    _write_manifest(outdir, "ensemble", cfg, paths, [], outputs)
    print(f"wrote {outputs[0]} ({len(column.values)} pairs) to {outdir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# correlate / average

_CORRELATE_DEFAULTS = {
    "scores": None,
    "dataset": None,
    "format": "jsonl",
    "facts": None,
    "keyphrases": None,
    "combine": "mean",
    "dataset_id": None,
    "emit_plot_data": False,
    "out": None,
}


def _report_to_csv(report: CorrelationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dataset_id", "metric", "criterion", "r", "n_pairs",
                     "n_reports"])
    for metric in report.metrics:
        for criterion in report.criteria:
            cell = report.cells[(metric, criterion)]
            writer.writerow([report.dataset_id, metric, criterion,
                             repr(cell.r) if cell.defined else "",
                             cell.n_pairs, cell.n_reports])
        if report.has_aggregate:
            value = report.aggregate.get(metric)
            writer.writerow([report.dataset_id, metric, "aggregate",
                             repr(value) if value is not None else "", "", ""])
    return buf.getvalue()


def _report_from_csv(path: str) -> CorrelationReport:
    metrics: list[str] = []
    criteria: list[str] = []
    cells: dict[tuple[str, str], Cell] = {}
    aggregate: dict[str, float | None] = {}
    dataset_id = ""
    try:
        f = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ParseError(str(exc), None, path) from None
    with f:
        reader = csv.DictReader(f)
        for row in reader:
            try:
                dataset_id = row["dataset_id"]
                metric, criterion = row["metric"], row["criterion"]
                r = float(row["r"]) if row["r"] else None
                n_pairs = int(row["n_pairs"] or 0)
                n_reports = int(row["n_reports"] or 1)
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"not a correlation report ({exc!r})",
                                 reader.line_num, path) from None
            if metric not in metrics:
                metrics.append(metric)
            if criterion == "aggregate":
                aggregate[metric] = r
                continue
            if criterion not in criteria:
                criteria.append(criterion)
            cells[(metric, criterion)] = Cell(r, n_pairs, n_reports=n_reports)
    if not metrics:
        raise NoOverlap(f"{path}: empty report")
    for metric in metrics:
        aggregate.setdefault(metric, None)
    return CorrelationReport(dataset_id=dataset_id, metrics=tuple(metrics),
                             criteria=tuple(criteria), cells=cells,
                             aggregate=aggregate)


def _render_report(report: CorrelationReport) -> str:
    headers = list(report.criteria) + (["aggregate"] if report.has_aggregate else [])
    name_width = max([len("metric")] + [len(m) for m in report.metrics])
    widths = [max(len(h), 6) for h in headers]
    lines = ["metric".ljust(name_width) + "  "
             + "  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for metric in report.metrics:
        cells = []
        for criterion, width in zip(report.criteria, widths):
            cell = report.cells[(metric, criterion)]
            cells.append((f"{cell.r:.2f}" if cell.defined else "n/a").rjust(width))
        if report.has_aggregate:
            value = report.aggregate.get(metric)
            cells.append((f"{value:.2f}" if value is not None else "n/a")
                         .rjust(widths[-1]))
        lines.append(metric.ljust(name_width) + "  " + "  ".join(cells))
    return "\n".join(lines) + "\n"


def _write_report_files(report: CorrelationReport, outdir: str) -> list[str]:
    csv_text = _report_to_csv(report)
    with open(os.path.join(outdir, "report.csv"), "w", encoding="utf-8",
              newline="") as f:
        f.write(csv_text)
    with open(os.path.join(outdir, "report.txt"), "w", encoding="utf-8",
              newline="") as f:
        f.write(_render_report(report))
    return ["report.csv", "report.txt"]


def cmd_correlate(args) -> int:
    cfg = _merge_config(args, _CORRELATE_DEFAULTS)
    outdir = _require(cfg, "out")
    paths = _score_paths(_require(cfg, "scores"))
    _check_path(_require(cfg, "dataset"), "dataset")
    if bool(cfg["facts"]) == bool(cfg["keyphrases"]):
        raise ConfigError("need exactly one of --facts or --keyphrases")
    annotation_path = cfg["facts"] or cfg["keyphrases"]
    _check_path(annotation_path, "annotation")
    try:
        combine = Combine(cfg["combine"])
    except ValueError:
        raise ConfigError(f"unknown combine mode {cfg['combine']!r}") from None

    dataset = load_dataset(cfg["dataset"], Format(cfg["format"]))
    if cfg["facts"]:
        annotations = load_fact_annotations(cfg["facts"], dataset)
        criterion_values = fact_score_table(annotations, combine)
    else:
        annotations = load_keyphrase_annotations(cfg["keyphrases"], dataset)
        pairs = {p.pair_id: p for p in dataset.pairs}
        criterion_values = keyphrase_score_table(annotations, pairs, combine)
    refs = {name: ScoreColumn(metric_name=name, values=values,
                              higher_is_better=name not in LOWER_IS_BETTER)
            for name, values in criterion_values.items()}

    table = _load_score_table(paths)
    overlap = False
    for column in table.columns.values():
        for ref in refs.values():
            if set(column.values) & set(ref.values):
                overlap = True
    if not overlap:
        raise NoOverlap("score columns and annotations share no pair ids")

    dataset_id = cfg["dataset_id"] or dataset.dataset_id or "dataset"
    report = correlation_report(table, refs, dataset_id=dataset_id)
    os.makedirs(outdir, exist_ok=True)
    outputs = _write_report_files(report, outdir)
    if cfg["emit_plot_data"]:
        outputs += _emit_plot_data(table, refs, outdir)
    _write_manifest(outdir, "correlate", cfg,
                    paths + [cfg["dataset"], annotation_path], [], outputs)
    print(_render_report(report), end="")
    return EXIT_OK


def _emit_plot_data(table: ScoreTable, refs: dict[str, ScoreColumn],
                    outdir: str) -> list[str]:
    outputs = []
    for metric, column in table.columns.items():
        for criterion, ref in refs.items():
            shared = [pid for pid in column.values if pid in ref.values]
            if len(shared) < 2:
                continue
            filename = f"scatter_{metric}_{criterion}.csv"
            with open(os.path.join(outdir, filename), "w", encoding="utf-8",
                      newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(["pair_id", metric, criterion])
                for pid in shared:
                    writer.writerow([pid, repr(column.values[pid]),
                                     repr(ref.values[pid])])
            outputs.append(filename)
    return outputs


_AVERAGE_DEFAULTS = {
    "reports": None,
    "out": None,
}


def cmd_average(args) -> int:
    cfg = _merge_config(args, _AVERAGE_DEFAULTS)
    outdir = _require(cfg, "out")
    raw = cfg["reports"]
    paths = raw if isinstance(raw, list) else [p.strip() for p in str(raw).split(",")]
    paths = [_check_path(p, "report") for p in paths if p]
    if not paths:
        raise ConfigError("no report files given")
    averaged = average_reports([_report_from_csv(p) for p in paths])
    os.makedirs(outdir, exist_ok=True)
    outputs = _write_report_files(averaged, outdir)
    _write_manifest(outdir, "average", cfg, paths, [], outputs)
    print(_render_report(averaged), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# iaa

_IAA_DEFAULTS = {
    "facts": None,
    "tolerances": "0,1,2",
    "out": None,
}


def cmd_iaa(args) -> int:
    cfg = _merge_config(args, _IAA_DEFAULTS)
    facts_path = _check_path(_require(cfg, "facts"), "annotation")
    raw = cfg["tolerances"]
    parts = raw if isinstance(raw, list) else str(raw).split(",")
    try:
        tolerances = tuple(int(p) for p in parts if str(p).strip() != "")
    except ValueError:
        raise ConfigError(f"bad --tolerances value {cfg['tolerances']!r}") from None

    annotations = load_fact_annotations(facts_path)
    table = iaa_table(annotations, tolerances)

    columns = list(next(iter(table.values())).keys())
    width = max(len(f) for f in table) + 2
    lines = ["field".ljust(width) + "  ".join(c.rjust(10) for c in columns)]
    for field_name, row in table.items():
        rendered = [(f"{row[c]:.2f}" if row[c] is not None else "n/a").rjust(10)
                    for c in columns]
        lines.append(field_name.ljust(width) + "  ".join(rendered))
    text = "\n".join(lines) + "\n"
    print(text, end="")

    if cfg["out"]:
        os.makedirs(cfg["out"], exist_ok=True)
        with open(os.path.join(cfg["out"], "iaa.csv"), "w", encoding="utf-8",
                  newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["field"] + columns)
            for field_name, row in table.items():
                writer.writerow([field_name]
                                + [repr(row[c]) if row[c] is not None else ""
                                   for c in columns])
        _write_manifest(cfg["out"], "iaa", cfg, [facts_path], [], ["iaa.csv"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate

_VALIDATE_DEFAULTS = {
    "dataset": None,
    "format": "jsonl",
    "facts": None,
    "keyphrases": None,
    "scores": None,
    "embeddings": None,
    "kge": None,
    "contextual": None,
    "logprobs": None,
    "lexicon": None,
}


def cmd_validate(args) -> int:
    cfg = _merge_config(args, _VALIDATE_DEFAULTS)
    checks: list[tuple[str, str]] = []  # (kind, path)
    if cfg["dataset"]:
        checks.append(("dataset", cfg["dataset"]))
    for key in ("facts", "keyphrases", "embeddings", "kge", "contextual",
                "logprobs", "lexicon"):
        if cfg[key]:
            checks.append((key, cfg[key]))
    if cfg["scores"]:
        raw = cfg["scores"]
        for path in _score_paths(raw):
            checks.append(("scores", path))
    if not checks:
        raise ConfigError("nothing to validate; give at least one input flag")

    dataset: Dataset | None = None
    if cfg["dataset"]:
        try:
            dataset = load_dataset(cfg["dataset"], Format(cfg["format"]))
        except NotevalError:
            dataset = None

    failures = 0
    for kind, path in checks:
        try:
            detail = _validate_one(kind, path, cfg, dataset)
            print(f"OK {path} ({detail})")
        except NotevalError as exc:
            failures += 1
            print(f"ERROR {path}: {exc}")
    return EXIT_DATA if failures else EXIT_OK


def _validate_one(kind: str, path: str, cfg: dict, dataset: Dataset | None) -> str:
    if not os.path.exists(path):
        raise ConfigError(f"file not found: {path}")
    if kind == "dataset":
        loaded = load_dataset(path, Format(cfg["format"]))
        return f"{len(loaded)} pairs"
    if kind == "facts":
        annotations = load_fact_annotations(path, dataset)
        return f"{len(annotations)} fact annotations"
    if kind == "keyphrases":
        annotations = load_keyphrase_annotations(path, dataset)
        return f"{len(annotations)} key-phrase annotations"
    if kind == "scores":
        column = load_score_column(path)
        if dataset is not None:
            column.validate_against(dataset)
            covered, missing = column.coverage(dataset)
            if missing:
                return (f"metric {column.metric_name}, {len(covered)} pairs, "
                        f"{len(missing)} missing: {', '.join(missing[:5])}")
        return f"metric {column.metric_name}, {len(column.values)} pairs"
    if kind == "embeddings":
        store = load_store(path)
        return f"{len(store)} vectors, dim {store.dim}"
    if kind == "kge":
        store = load_store(path, StoreKind.CONCEPT)
        return f"{len(store)} concept vectors, dim {store.dim}"
    if kind == "contextual":
        provider = ContextualFileProvider(path)
        return f"{len(provider)} records, dim {provider.dim}"
    if kind == "logprobs":
        provider = FileLogProbProvider(path)
        return f"{len(provider)} records"
    if kind == "lexicon":
        lexicon = load_lexicon(path)
        return f"{len(lexicon)} entries, longest {lexicon.max_entry_len} tokens"
    raise ConfigError(f"unknown validation kind {kind!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# parser wiring

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="noteval",
                     description="Scoring and meta-evaluation of automatically "
                                 "generated clinical notes")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("score", help="compute metric columns for a dataset")
    _add_common(p)
    p.add_argument("--dataset")
    p.add_argument("--format", choices=["jsonl", "csv"])
    p.add_argument("--metrics", help="comma-separated: " + ",".join(KNOWN_METRICS))
    p.add_argument("--tokenizer", choices=["lower_alnum", "whitespace"])
    p.add_argument("--embeddings", help="static embedding store file")
    p.add_argument("--contextual", help="contextual embedding JSONL")
    p.add_argument("--kge", help="concept embedding store file")
    p.add_argument("--lexicon", help="TSV concept lexicon")
    p.add_argument("--logprobs", help="precomputed log-probability JSONL")
    p.add_argument("--alpha", type=float, help="medical token weight is 1+alpha")
    p.add_argument("--normalize", choices=["weight-sum", "token-count"])
    p.add_argument("--bart-normalize", dest="bart_normalize",
                   choices=["weight-sum", "raw-sum"])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--window", dest="window", action="store_true",
                       default=None, help="window long docs for bertscore")
    group.add_argument("--no-window", dest="window", action="store_false",
                       default=None)
    p.add_argument("--max-len", dest="max_len", type=int)
    p.add_argument("--overlap", type=int)
    p.add_argument("--direction",
                   choices=[d.value for d in Direction])
    p.add_argument("--mist-mode", dest="mist_mode",
                   choices=["recall", "verbatim"])
    p.add_argument("--lm-order", dest="lm_order", type=int)
    p.add_argument("--lm-k", dest="lm_k", type=float)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_score)

    p = subs.add_parser("refscores",
                        help="reference criterion columns from annotations")
    _add_common(p)
    p.add_argument("--dataset")
    p.add_argument("--format", choices=["jsonl", "csv"])
    p.add_argument("--facts")
    p.add_argument("--keyphrases")
    p.add_argument("--combine", choices=[c.value for c in Combine])
    p.add_argument("--out")
    p.set_defaults(func=cmd_refscores)

    p = subs.add_parser("ensemble", help="z-score ensemble of metric columns")
    _add_common(p)
    p.add_argument("--scores", nargs="+", help="score CSV files or directories")
    p.add_argument("--preset", help=", ".join(sorted(ENSEMBLE_PRESETS)))
    p.add_argument("--name")
    p.add_argument("--members", help="comma-separated member column names")
    p.add_argument("--sample-sigma", dest="sample_sigma", action="store_true",
                   default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ensemble)

    p = subs.add_parser("correlate", help="correlate metrics with criteria")
    _add_common(p)
    p.add_argument("--scores", nargs="+")
    p.add_argument("--dataset")
    p.add_argument("--format", choices=["jsonl", "csv"])
    p.add_argument("--facts")
    p.add_argument("--keyphrases")
    p.add_argument("--combine", choices=[c.value for c in Combine])
    p.add_argument("--dataset-id", dest="dataset_id")
    p.add_argument("--emit-plot-data", dest="emit_plot_data",
                   action="store_true", default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_correlate)

    p = subs.add_parser("average", help="average correlation reports")
    _add_common(p)
    p.add_argument("--reports", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_average)

    p = subs.add_parser("iaa", help="inter-annotator agreement table")
    _add_common(p)
    p.add_argument("--facts")
    p.add_argument("--tolerances")
    p.add_argument("--out")
    p.set_defaults(func=cmd_iaa)

    p = subs.add_parser("validate", help="validate files of any known format")
    _add_common(p)
    p.add_argument("--dataset")
    p.add_argument("--format", choices=["jsonl", "csv"])
    p.add_argument("--facts")
    p.add_argument("--keyphrases")
    p.add_argument("--scores", nargs="+")
    p.add_argument("--embeddings")
    p.add_argument("--kge")
    p.add_argument("--contextual")
    p.add_argument("--logprobs")
    p.add_argument("--lexicon")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotevalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
