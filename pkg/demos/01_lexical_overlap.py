"""
Tokenizing clinical text and scoring lexical overlap
====================================================

Walks through the text layer: word tokenization, sentence splitting, and
the n-gram / subsequence overlap scores computed from them.
"""

from noteval.lexical import rouge_l, rouge_n
from noteval.text import split_sentences, tokenize

reference = ("Patient presents with chest pain for 3 days. "
             "Denies fever. Dr. Smith ordered an ECG.")
generated = ("Patient has chest pain for 3 days. "
             "An ECG was ordered. Reports mild fever.")

# Tokenization lowercases and keeps alphanumeric runs; punctuation goes away
# but digits stay, so dosages and durations survive.
ref_tokens = tokenize(reference)
gen_tokens = tokenize(generated)
print("reference tokens:", ref_tokens.surfaces())
print("generated tokens:", gen_tokens.surfaces())

# Sentence splitting knows the common clinical abbreviations, so "Dr." does
# not end a sentence.
for start, end in split_sentences(reference):
    print("sentence:", repr(reference[start:end]))

# Unigram, bigram, and longest-common-subsequence overlap. Precision asks
# how much of the generated note is supported; recall asks how much of the
# reference got covered.
print()
print(f"{'score':<10} {'P':>6} {'R':>6} {'F1':>6}")
for name, prf in [
    ("rouge-1", rouge_n(gen_tokens, ref_tokens, 1)),
    ("rouge-2", rouge_n(gen_tokens, ref_tokens, 2)),
    ("rouge-l", rouge_l(gen_tokens, ref_tokens)),
]:
    print(f"{name:<10} {prf.precision:>6.3f} {prf.recall:>6.3f} {prf.f1:>6.3f}")

# Repeated words only count up to their reference frequency (clipping):
print()
print("clipping: 'pain pain pain' vs 'pain' ->",
      rouge_n(["pain", "pain", "pain"], ["pain"], 1).precision)
