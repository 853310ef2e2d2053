"""Acceptance gate for the exporter: one pass/fail line per clause.

Clauses: every export format passes the consumer's validate subcommand;
windowed subword exports obey the stride arithmetic; the copy-vs-shuffled
log-probability oracle holds on five pairs.
"""

import json
import random

from conftest import make_sentence, write_dataset
from noteval_exporter import ExportJob, export_contextual, export_logprobs
from noteval_exporter.cli import main


def verdict(clause: str, problems: list[str], detail: str) -> None:
    status = "FAIL" if problems else "PASS"
    print(f"[criterion 11{clause}] {status} {detail}")
    assert not problems, "; ".join(problems)


def read_records(path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def test_criterion_11a_round_trip(encoder_dir, seq2seq_dir, scorer_dir,
                                  tmp_path, noteval_validate):
    rng = random.Random(101)
    dataset = write_dataset(tmp_path / "d.jsonl", [
        {"pair_id": f"p{i}", "reference": make_sentence(rng, 6),
         "system": make_sentence(rng, 5)} for i in range(3)])
    out = tmp_path / "out"
    problems = []
    for argv in (["embeddings", "--model", encoder_dir],
                 ["logprobs", "--model", seq2seq_dir],
                 ["scores", "--model", scorer_dir]):
        code = main(argv + ["--dataset", dataset, "--out", str(out)])
        if code != 0:
            problems.append(f"{argv[0]} export exited {code}")
    proc = noteval_validate("--contextual", str(out / "contextual.jsonl"),
                            "--logprobs", str(out / "logprobs.jsonl"),
                            "--scores", str(out / "bleurt.csv"))
    if proc.returncode != 0:
        problems.append(f"validate exited {proc.returncode}: "
                        f"{proc.stdout}{proc.stderr}")
    ok_lines = [l for l in proc.stdout.splitlines() if l.startswith("OK ")]
    if len(ok_lines) != 3:
        problems.append(f"expected 3 OK lines, got {len(ok_lines)}")
    verdict("a", problems,
            "all three export formats pass the consumer's validate")


def test_criterion_11b_stride_arithmetic(encoder_dir, tmp_path):
    rng = random.Random(102)
    dataset = write_dataset(tmp_path / "d.jsonl", [
        {"pair_id": "p1", "reference": make_sentence(rng, 23),
         "system": make_sentence(rng, 17)}])
    result = export_contextual(ExportJob(
        model=encoder_dir, dataset=dataset, out_dir=str(tmp_path / "out"),
        max_len=6, overlap=2))
    problems = []
    for record in read_records(result.path):
        starts = [start for start, _ in record["windows"]]
        expected = [k * (6 - 2) for k in range(len(starts))]
        if starts != expected:
            problems.append(f"{record['pair_id']}/{record['side']}: "
                            f"starts {starts} != {expected}")
        if record["windows"][-1][1] != len(record["tokens"]):
            problems.append(f"{record['pair_id']}/{record['side']}: "
                            f"last window does not end at the document")
    verdict("b", problems,
            "windowed export starts sit at multiples of max_len - overlap")


def test_criterion_11c_copy_oracle(seq2seq_dir, tmp_path):
    rng = random.Random(103)
    copies, shuffles = [], []
    for i in range(5):
        words = make_sentence(rng, 6).split()
        shuffled = words[:]
        while shuffled == words:
            rng.shuffle(shuffled)
        copies.append({"pair_id": f"p{i}", "reference": " ".join(words),
                       "system": " ".join(words)})
        shuffles.append({"pair_id": f"p{i}", "reference": " ".join(words),
                         "system": " ".join(shuffled)})
    means = {}
    for name, rows in (("copy", copies), ("shuffle", shuffles)):
        result = export_logprobs(ExportJob(
            model=seq2seq_dir,
            dataset=write_dataset(tmp_path / f"{name}.jsonl", rows),
            out_dir=str(tmp_path / name)))
        means[name] = {r["pair_id"]: sum(r["logprobs"]) / len(r["logprobs"])
                       for r in read_records(result.path)}
    problems = [f"{pid}: copy {means['copy'][pid]:.3f} <= "
                f"shuffled {means['shuffle'][pid]:.3f}"
                for pid in means["copy"]
                if means["copy"][pid] <= means["shuffle"][pid]]
    verdict("c", problems,
            "copy target out-scores shuffled target on all 5 pairs")
