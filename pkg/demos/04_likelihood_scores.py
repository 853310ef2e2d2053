"""
Likelihood scoring of generated notes
=====================================

A note is scored by the mean log-probability of its tokens under a
language model. The toolkit ships an add-k smoothed n-gram model for
self-contained runs; real model log-probs arrive through a file provider.
The medical variant re-averages with concept tokens upweighted.
"""

from noteval.concepts import build_lexicon
from noteval.likelihood import (
    Direction,
    bartscore,
    med_bartscore,
    score_logprobs,
    train_ngram_lm,
)
from noteval.matching import medical_weights
from noteval.text import tokenize

# Reference notes act as the training corpus for the fallback model.
corpus_texts = [
    "Patient reports chest pain since morning.",
    "Patient denies chest pain or fever.",
    "Mild fever noted since yesterday morning.",
]
corpus = [tokenize(t) for t in corpus_texts]
lm = train_ngram_lm(corpus, n=2, k=1.0)

# In-domain wording scores higher than off-topic wording.
for text in ("Patient reports chest pain.",
             "Quarterly revenue exceeded projections."):
    row = score_logprobs(tokenize(text), lm, pair_id="demo",
                         direction=Direction.REF_TO_SYS)
    print(f"{bartscore(row):8.3f}  mean token logprob  {text!r}")

# Smoothing never assigns zero probability, so unseen words survive:
row = score_logprobs(["zebra"], lm, pair_id="oov",
                     direction=Direction.REF_TO_SYS)
print(f"{bartscore(row):8.3f}  single unseen token")

# Medical reweighting: concept-span tokens count 1 + alpha times.
lexicon = build_lexicon([("chest pain", "C01")])
target = tokenize("Patient reports chest pain.")
row = score_logprobs(target, lm, pair_id="demo",
                     direction=Direction.REF_TO_SYS)
weights = medical_weights(list(row.target_tokens), lexicon, alpha=1.0)
print(f"\nplain   {bartscore(row):.3f}")
print(f"medical {med_bartscore(row, weights):.3f}"
      "  (same tokens, concept spans upweighted)")
