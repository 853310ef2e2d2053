"""
Human fact annotations: reference criteria and annotator agreement
==================================================================

Annotators count correct, incorrect, hallucinated, and omitted facts per
note. Those counts become the reference criteria that metrics are judged
against, and comparing annotators to each other shows how reliable the
criteria themselves are.
"""

from noteval.analysis import iaa_table
from noteval.data import FactAnnotation
from noteval.refscores import (
    ErrorCounts,
    aggregate_score,
    error_score,
    fact_scores,
    quality_score,
)

# One annotator's verdict on one generated note.
ann = FactAnnotation(pair_id="p1", annotator_id="a1", correct_facts=3,
                     incorrect_facts=1, hallucinated_facts=1,
                     omitted_facts=2, reference_facts=6)
s = fact_scores(ann)
print(f"factual precision  {s.factual_precision:.3f}")
print(f"factual recall     {s.factual_recall:.3f}")
print(f"factual F1         {s.factual_f1:.3f}")
print(f"hallucination rate {s.hallucination_rate:.3f}")
print(f"omission rate      {s.omission_rate:.3f}")

# Weighted error counts give a quality score: critical errors cost a full
# point each, non-critical a third, spelling or grammar a twelfth, all
# relative to the longer note's sentence count.
errors = ErrorCounts(critical=1, non_critical=3, spelling_grammar=0)
summary = "Seen today. Chest pain resolved. Follow up in one week."
reference = " ".join(f"Reference sentence {i}." for i in range(8))
print(f"\nerror score   {error_score(errors):.3f}")
print(f"quality score {quality_score(errors, summary, reference):.3f}")

# A metric's headline number combines its correlations with factual F1 (F),
# hallucination rate (H), and omission rate (O) as (2F - H - O) / 4.
print(f"\naggregate for r_F=0.59, r_H=0.02, r_O=-0.71: "
      f"{aggregate_score(0.59, 0.02, -0.71):.2f}")

# Agreement between annotators, averaged over annotator pairs: Cohen's
# kappa on exact counts, micro-F1 with a small count tolerance, Pearson.
annotations = []
counts = {"a1": [(3, 1, 1, 2), (5, 0, 0, 1), (2, 2, 1, 3)],
          "a2": [(4, 1, 1, 1), (5, 0, 1, 1), (2, 1, 1, 4)]}
for annotator, rows in counts.items():
    for i, (c, w, h, o) in enumerate(rows):
        annotations.append(FactAnnotation(
            pair_id=f"p{i}", annotator_id=annotator, correct_facts=c,
            incorrect_facts=w, hallucinated_facts=h, omitted_facts=o,
            reference_facts=8))

table = iaa_table(annotations)
columns = list(next(iter(table.values())))
print()
print("field".ljust(18) + "  ".join(c.rjust(9) for c in columns))
for field_name, row in table.items():
    cells = [(f"{row[c]:.2f}" if row[c] is not None else "n/a").rjust(9)
             for c in columns]
    print(field_name.ljust(18) + "  ".join(cells))
