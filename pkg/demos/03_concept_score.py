"""
Concept linking and the knowledge-graph concept score
=====================================================

Clinical notes are compared in concept space: surface phrases are linked
to concept ids through a lexicon, concepts are embedded with
knowledge-graph vectors, and each reference concept is credited with its
best cosine match among the generated note's concepts.
"""

import numpy as np

from noteval.concepts import MistMode, build_lexicon, link_concepts, mist
from noteval.embeddings import EmbeddingStore, StoreKind
from noteval.text import tokenize

lexicon = build_lexicon([
    ("chest pain", "C0008031"),
    ("myocardial infarction", "C0027051"),
    ("fever", "C0015967"),
    ("cough", "C0010200"),
])

reference = "History of myocardial infarction. Presents with fever and cough."
generated = "Known heart attack history. Has chest pain and fever."

ref_concepts = link_concepts(tokenize(reference), lexicon)
gen_concepts = link_concepts(tokenize(generated), lexicon)
print("reference concepts:", [m.concept_id for m in ref_concepts.mentions])
print("generated concepts:", [m.concept_id for m in gen_concepts.mentions])

# Toy knowledge-graph embeddings. Related conditions point in similar
# directions, so a near-miss still earns partial credit.
store = EmbeddingStore(dim=3, table={
    "C0027051": np.array([1.0, 0.0, 0.0]),   # myocardial infarction
    "C0008031": np.array([0.9, 0.436, 0.0]), # chest pain, close to MI
    "C0015967": np.array([0.0, 0.0, 1.0]),   # fever
    "C0010200": np.array([0.0, 1.0, 0.0]),   # cough
}, kind=StoreKind.CONCEPT)

result = mist(gen_concepts, ref_concepts, store)
print(f"\nconcept score (recall form): {result.value:.3f}")
# MI is missing from the generated note but chest pain is nearby in the
# embedding space, fever matches exactly, cough finds no good partner.

# The verbatim normalization anchors on the generated note's concepts but
# still divides by the reference count, so it can exceed 1 when the
# generated note carries more well-matching concepts than the reference.
# The recall form is the default and stays bounded.
crowded = link_concepts(tokenize(
    "Myocardial infarction with chest pain."), lexicon)
one_ref = link_concepts(tokenize("Myocardial infarction confirmed."), lexicon)
for mode in (MistMode.RECALL, MistMode.VERBATIM):
    value = mist(crowded, one_ref, store, mode).value
    print(f"two close concepts vs one, {mode.value}: {value:.3f}")
