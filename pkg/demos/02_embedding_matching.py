"""
Greedy embedding matching with medical token weighting
======================================================

BERTScore-style scoring: every token is matched to its most similar
counterpart by cosine similarity, and matches are averaged. The medical
variant upweights tokens that fall inside a linked concept span, and long
notes are scored through overlapping 512-token windows.
"""

import numpy as np

from noteval.concepts import build_lexicon
from noteval.data import SummaryPair
from noteval.embeddings import EmbeddingStore, StaticProvider, StoreKind
from noteval.matching import bert_prf, med_bertscore, medical_weights
from noteval.text import segment_sliding

rng = np.random.default_rng(7)

reference = "Patient reports severe chest pain and mild fever."
generated = "Patient notes severe chest pain, no fever."

# A toy static embedding table: one random unit vector per word. Real runs
# load vectors exported from a contextual model instead.
vocab = sorted(set((reference + " " + generated).lower()
                   .replace(",", "").replace(".", "").split()))
table = {}
for word in vocab:
    vec = rng.normal(size=16)
    table[word] = vec / np.linalg.norm(vec)
store = EmbeddingStore(dim=16, table=table, kind=StoreKind.TOKEN)
provider = StaticProvider(store)

pair = SummaryPair(pair_id="demo", reference=reference, system=generated)

# Plain greedy matching.
plain = bert_prf(pair, provider)
print(f"unweighted  P={plain.precision:.3f} R={plain.recall:.3f} "
      f"F1={plain.f1:.3f}")

# Medical weighting: tokens inside recognized concept spans get weight
# 1 + alpha, everything else weight 1.
lexicon = build_lexicon([("chest pain", "C001"), ("fever", "C002")])
weights = medical_weights(["severe", "chest", "pain", "today"], lexicon,
                          alpha=1.0)
print("weights for 'severe chest pain today':", weights.weights)

med = med_bertscore(pair, provider, lexicon, alpha=1.0, windowed=False)
print(f"medical     P={med.precision:.3f} R={med.recall:.3f} "
      f"F1={med.f1:.3f}")

# Long documents are cut into sliding windows before embedding; starts
# advance by max_len - overlap so every token lands in some window.
print()
print("window layout for a 1200-token note:")
for seg in segment_sliding(1200, max_len=512, overlap=100):
    lo, hi = seg.token_range
    print(f"  window {seg.segment_index}: tokens [{lo}, {hi})")

# With a static table the windowed score equals the unwindowed one; the
# windows exist for providers whose models cap input length.
sp = med_bertscore(pair, provider, lexicon, alpha=1.0, windowed=True)
print(f"windowed    P={sp.precision:.3f} R={sp.recall:.3f} F1={sp.f1:.3f}")
