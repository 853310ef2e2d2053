"""Shared fixtures: tiny deterministic models saved to disk, dataset helpers,
and a runner for the scoring toolkit's validate subcommand.

The models are built (and where needed, briefly trained) from fixed seeds at
session start, then loaded through the same --model path flag a real
checkpoint would use.  Each training fixture asserts its sanity property
before saving, so a silent training regression fails loudly here rather than
in the tests that depend on it.
"""

from __future__ import annotations

import json
import os
import random
import shutil
import subprocess
import sys

import pytest

os.environ.setdefault("TOKENIZERS_PARALLELISM", "false")
os.environ.setdefault("HF_HUB_DISABLE_PROGRESS_BARS", "1")
os.environ.setdefault("TRANSFORMERS_VERBOSITY", "error")

WORDS = [
    "the", "patient", "reports", "chest", "pain", "fever", "cough", "and",
    "no", "mild", "severe", "history", "of", "denies", "nausea", "with",
    "shortness", "breath", "on", "exam", "today", "stable", "acute",
    "chronic", "left", "right", "arm", "leg", "head", "daily", "medication",
    "dose", "blood", "pressure", "heart", "rate", "normal",
]
SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
PAD_ID, UNK_ID, CLS_ID, SEP_ID, MASK_ID = range(5)
CONTENT_IDS = list(range(len(SPECIALS), len(SPECIALS) + len(WORDS)))
HIDDEN_SIZE = 32  # encoder hidden size, asserted by the shape tests


def build_tokenizer(model_max_length: int, include_token_type: bool = True):
    from tokenizers import Tokenizer, models, normalizers, pre_tokenizers
    from tokenizers.processors import TemplateProcessing
    from transformers import PreTrainedTokenizerFast

    vocab = {token: i for i, token in enumerate(SPECIALS + WORDS)}
    backend = Tokenizer(models.WordPiece(vocab, unk_token="[UNK]",
                                         max_input_chars_per_word=100))
    backend.normalizer = normalizers.BertNormalizer(lowercase=True)
    backend.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    backend.post_processor = TemplateProcessing(
        single="[CLS]:0 $A:0 [SEP]:0",
        pair="[CLS]:0 $A:0 [SEP]:0 $B:1 [SEP]:1",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])])
    names = ["input_ids", "attention_mask"]
    if include_token_type:
        names.insert(1, "token_type_ids")
    return PreTrainedTokenizerFast(
        tokenizer_object=backend, unk_token="[UNK]", pad_token="[PAD]",
        cls_token="[CLS]", sep_token="[SEP]", mask_token="[MASK]",
        model_max_length=model_max_length, model_input_names=names)


@pytest.fixture(scope="session")
def encoder_dir(tmp_path_factory) -> str:
    """Random-weight hidden-state encoder with a roomy tokenizer limit."""
    import torch
    from transformers import BertConfig, BertModel

    torch.manual_seed(0)
    config = BertConfig(vocab_size=len(SPECIALS) + len(WORDS),
                        hidden_size=HIDDEN_SIZE, num_hidden_layers=2,
                        num_attention_heads=4, intermediate_size=64,
                        max_position_embeddings=1024)
    model = BertModel(config)
    model.eval()
    out = tmp_path_factory.mktemp("encoder")
    model.save_pretrained(out)
    build_tokenizer(1024).save_pretrained(out)
    return str(out)


@pytest.fixture(scope="session")
def cramped_encoder_dir(tmp_path_factory) -> str:
    """Same encoder weights but a tokenizer limit of 8 positions."""
    import torch
    from transformers import BertConfig, BertModel

    torch.manual_seed(0)
    config = BertConfig(vocab_size=len(SPECIALS) + len(WORDS),
                        hidden_size=HIDDEN_SIZE, num_hidden_layers=2,
                        num_attention_heads=4, intermediate_size=64,
                        max_position_embeddings=1024)
    model = BertModel(config)
    model.eval()
    out = tmp_path_factory.mktemp("cramped")
    model.save_pretrained(out)
    build_tokenizer(8).save_pretrained(out)
    return str(out)


def _copy_batch(generator, batch_size: int):
    import torch

    seqs = []
    for _ in range(batch_size):
        n = int(torch.randint(3, 9, (1,), generator=generator))
        picks = torch.randint(0, len(CONTENT_IDS), (n,), generator=generator)
        seqs.append([CONTENT_IDS[int(i)] for i in picks])
    width = max(len(s) for s in seqs) + 2
    src = torch.full((batch_size, width), PAD_ID)
    attention = torch.zeros((batch_size, width), dtype=torch.long)
    labels = torch.full((batch_size, width - 1), -100)
    for row, seq in enumerate(seqs):
        full = [CLS_ID] + seq + [SEP_ID]
        src[row, :len(full)] = torch.tensor(full)
        attention[row, :len(full)] = 1
        target = seq + [SEP_ID]
        labels[row, :len(target)] = torch.tensor(target)
    return src, attention, labels


def _mean_logprob(model, src_ids: list[int], tgt_ids: list[int]) -> float:
    import torch

    src = torch.tensor([[CLS_ID] + src_ids + [SEP_ID]])
    labels = torch.tensor([tgt_ids + [SEP_ID]])
    with torch.no_grad():
        logits = model(input_ids=src, labels=labels).logits
    logprobs = logits[0].log_softmax(-1).gather(1, labels[0].unsqueeze(1))
    return float(logprobs.mean())


@pytest.fixture(scope="session")
def seq2seq_dir(tmp_path_factory) -> str:
    """Seq2seq LM trained on the copy task until copying dominates."""
    import torch
    from transformers import BartConfig, BartForConditionalGeneration

    torch.manual_seed(0)
    config = BartConfig(vocab_size=len(SPECIALS) + len(WORDS), d_model=64,
                        encoder_layers=1, decoder_layers=1,
                        encoder_attention_heads=2, decoder_attention_heads=2,
                        encoder_ffn_dim=128, decoder_ffn_dim=128,
                        max_position_embeddings=128, pad_token_id=PAD_ID,
                        bos_token_id=CLS_ID, eos_token_id=SEP_ID,
                        decoder_start_token_id=CLS_ID, forced_eos_token_id=None,
                        dropout=0.0, attention_dropout=0.0,
                        activation_dropout=0.0)
    model = BartForConditionalGeneration(config)
    generator = torch.Generator().manual_seed(1)
    optimizer = torch.optim.Adam(model.parameters(), lr=2e-3)
    model.train()
    for _ in range(1000):
        src, attention, labels = _copy_batch(generator, 32)
        loss = model(input_ids=src, attention_mask=attention, labels=labels).loss
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
    model.eval()

    rng = random.Random(7)
    for _ in range(3):
        seq = [CONTENT_IDS[rng.randrange(len(CONTENT_IDS))] for _ in range(6)]
        shuffled = seq[:]
        while shuffled == seq:
            rng.shuffle(shuffled)
        margin = _mean_logprob(model, seq, seq) - _mean_logprob(model, seq, shuffled)
        assert margin > 1.0, f"copy training failed, margin {margin:.3f}"

    out = tmp_path_factory.mktemp("seq2seq")
    model.save_pretrained(out)
    build_tokenizer(128, include_token_type=False).save_pretrained(out)
    return str(out)


@pytest.fixture(scope="session")
def scorer_dir(tmp_path_factory) -> str:
    """Regression cross-encoder trained to track token-set overlap."""
    import torch
    from transformers import BertConfig, BertForSequenceClassification

    tokenizer = build_tokenizer(256)
    torch.manual_seed(0)
    config = BertConfig(vocab_size=len(SPECIALS) + len(WORDS), hidden_size=64,
                        num_hidden_layers=2, num_attention_heads=4,
                        intermediate_size=128, max_position_embeddings=256,
                        num_labels=1, hidden_dropout_prob=0.0,
                        attention_probs_dropout_prob=0.0)
    model = BertForSequenceClassification(config)

    rng = random.Random(3)

    def jaccard(a, b):
        return len(set(a) & set(b)) / len(set(a) | set(b))

    def make_pair():
        n = rng.randint(4, 8)
        a = [rng.choice(WORDS) for _ in range(n)]
        mode = rng.random()
        if mode < 0.35:
            b = a[:]
        elif mode < 0.55:
            pool = [w for w in WORDS if w not in set(a)]
            b = [rng.choice(pool) for _ in range(n)]
        elif mode < 0.8:
            b = [rng.choice(WORDS) for _ in range(n)]
        else:
            keep = rng.randint(1, n - 1)
            b = a[:keep] + [rng.choice(WORDS) for _ in range(n - keep)]
        return " ".join(a), " ".join(b), jaccard(a, b)

    steps = 2500
    optimizer = torch.optim.Adam(model.parameters(), lr=1e-3)
    scheduler = torch.optim.lr_scheduler.LinearLR(optimizer, 1.0, 0.05, steps)
    model.train()
    for _ in range(steps):
        batch = [make_pair() for _ in range(16)]
        encoded = tokenizer([p[0] for p in batch], [p[1] for p in batch],
                            padding=True, return_tensors="pt")
        labels = torch.tensor([[p[2]] for p in batch])
        loss = model(**encoded, labels=labels).loss
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
        scheduler.step()
    model.eval()

    def score(a, b):
        encoded = tokenizer(a, b, return_tensors="pt")
        with torch.no_grad():
            return float(model(**encoded).logits[0, 0])

    probe = random.Random(99)
    for _ in range(5):
        n = probe.randint(4, 7)
        a = [probe.choice(WORDS) for _ in range(n)]
        pool = [w for w in WORDS if w not in set(a)]
        b = [probe.choice(pool) for _ in range(n)]
        margin = score(" ".join(a), " ".join(a)) - score(" ".join(a), " ".join(b))
        assert margin > 0.2, f"overlap training failed, margin {margin:.3f}"

    out = tmp_path_factory.mktemp("scorer")
    model.save_pretrained(out)
    tokenizer.save_pretrained(out)
    return str(out)


def make_sentence(rng: random.Random, n_words: int) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(n_words))


def write_dataset(path, rows: list[dict]) -> str:
    path.write_text("".join(json.dumps(row) + "\n" for row in rows),
                    encoding="utf-8")
    return str(path)


@pytest.fixture(scope="session")
def noteval_validate():
    """Runs the scoring toolkit's validate subcommand as a subprocess."""
    script = shutil.which("noteval")

    def run(*flags: str) -> subprocess.CompletedProcess:
        if script:
            cmd = [script, "validate", *flags]
        else:
            cmd = [sys.executable, "-m", "noteval.cli", "validate", *flags]
        return subprocess.run(cmd, capture_output=True, text=True)

    return run
