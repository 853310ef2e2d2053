"""Concept lexicon, greedy linking, and the concept-embedding score."""

import math
import random

import numpy as np
import pytest

from noteval.concepts import (
    ConceptLexicon,
    ConceptSet,
    MistMode,
    build_lexicon,
    link_concepts,
    load_lexicon,
    mist,
)
from noteval.embeddings import EmbeddingStore, StoreKind
from noteval.errors import ParseError, UndefinedScore
from noteval.text import tokenize


def store_from(vectors: dict[str, list[float]]) -> EmbeddingStore:
    dim = len(next(iter(vectors.values())))
    return EmbeddingStore(dim=dim,
                          table={k: np.array(v, dtype=float) for k, v in vectors.items()},
                          kind=StoreKind.CONCEPT)


def concept_set(ids: list[str]) -> ConceptSet:
    from noteval.concepts import ConceptMention
    return ConceptSet(tuple(ConceptMention(c, (i, i + 1)) for i, c in enumerate(ids)))


class TestLexicon:
    def test_build_normalizes_surfaces(self):
        lex = build_lexicon([("Chest Pain", "C01"), ("fever", "C02")])
        assert lex.entries[("chest", "pain")] == "C01"
        assert lex.entries[("fever",)] == "C02"
        assert lex.max_entry_len == 2

    def test_load_tsv(self, tmp_path):
        p = tmp_path / "lex.tsv"
        p.write_text("chest pain\tC01\nfever\tC02\n\n")
        lex = load_lexicon(str(p))
        assert len(lex) == 2
        assert lex.entries[("chest", "pain")] == "C01"

    def test_load_rejects_bad_row(self, tmp_path):
        p = tmp_path / "lex.tsv"
        p.write_text("only-one-column\n")
        with pytest.raises(ParseError):
            load_lexicon(str(p))

    def test_empty_surface_rejected(self, tmp_path):
        p = tmp_path / "lex.tsv"
        p.write_text("...\tC01\n")
        with pytest.raises(ParseError):
            load_lexicon(str(p))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_lexicon(str(tmp_path / "absent.tsv"))


class TestLinkConcepts:
    LEX = build_lexicon([("chest pain", "C01"), ("fever", "C02"), ("pain", "C03")])

    def test_longest_match_wins(self):
        cs = link_concepts(tokenize("chest pain and fever"), self.LEX)
        assert cs.ids() == ["C01", "C02"]

    def test_empty_lexicon(self):
        lex = ConceptLexicon(entries={}, max_entry_len=0)
        assert link_concepts(tokenize("chest pain"), lex).ids() == []

    def test_multiset_semantics(self):
        cs = link_concepts(tokenize("fever chills fever"), self.LEX)
        assert cs.ids() == ["C02", "C02"]
        assert cs.counts()["C02"] == 2
        assert cs.unique_ids() == ["C02"]

    def test_no_overlapping_matches(self):
        # "chest pain" consumes "pain"; the next "pain" links alone
        cs = link_concepts(tokenize("chest pain pain"), self.LEX)
        assert cs.ids() == ["C01", "C03"]

    def test_spans_recorded(self):
        cs = link_concepts(tokenize("chest pain and fever"), self.LEX)
        assert [m.token_range for m in cs.mentions] == [(0, 2), (3, 4)]

    def test_case_insensitive_via_tokenizer(self):
        cs = link_concepts(tokenize("Chest PAIN"), self.LEX)
        assert cs.ids() == ["C01"]


class TestMist:
    ORTHO = store_from({"c1": [1.0, 0.0, 0.0], "c2": [0.0, 1.0, 0.0],
                        "c3": [0.0, 0.0, 1.0]})

    def test_identity_both_modes(self):
        for mode in MistMode:
            res = mist(concept_set(["c1", "c2"]), concept_set(["c1", "c2"]),
                       self.ORTHO, mode)
            assert res.value == 1.0

    def test_half_recall(self):
        res = mist(concept_set(["c1"]), concept_set(["c1", "c2"]), self.ORTHO)
        assert res.value == 0.5
        res = mist(concept_set(["c1"]), concept_set(["c1", "c2"]), self.ORTHO,
                   MistMode.VERBATIM)
        assert res.value == 0.5

    def test_system_superset(self):
        res = mist(concept_set(["c1", "c2"]), concept_set(["c1"]), self.ORTHO)
        assert res.value == 1.0
        res = mist(concept_set(["c1", "c2"]), concept_set(["c1"]), self.ORTHO,
                   MistMode.VERBATIM)
        assert res.value == 1.0

    def test_modes_diverge_on_nonmaximal_matches(self):
        kge = store_from({
            "c1": [1.0, 0.0],
            "c2": [0.6, math.sqrt(1 - 0.36)],
            "c3": [0.4, math.sqrt(1 - 0.16)],
        })
        sys, ref = concept_set(["c2", "c3"]), concept_set(["c1"])
        rec = mist(sys, ref, kge, MistMode.RECALL)
        verb = mist(sys, ref, kge, MistMode.VERBATIM)
        assert math.isclose(rec.value, 0.6, abs_tol=1e-12)
        assert math.isclose(verb.value, 1.0, abs_tol=1e-12)

    def test_empty_reference_undefined(self):
        with pytest.raises(UndefinedScore):
            mist(concept_set(["c1"]), concept_set([]), self.ORTHO)
        with pytest.raises(UndefinedScore):
            mist(concept_set(["c1"]), concept_set(["nokge"]), self.ORTHO)

    def test_empty_system_scores_zero(self):
        res = mist(concept_set([]), concept_set(["c1"]), self.ORTHO)
        assert res.value == 0.0
        res = mist(concept_set(["nokge"]), concept_set(["c1"]), self.ORTHO)
        assert res.value == 0.0
        assert res.system_skipped == 1

    def test_skipped_counts_reported(self):
        res = mist(concept_set(["c1", "ghost"]), concept_set(["c2", "phantom"]),
                   self.ORTHO)
        assert res.system_used == 1
        assert res.reference_used == 1
        assert res.system_skipped == 1
        assert res.reference_skipped == 1

    def test_duplicates_collapse(self):
        res1 = mist(concept_set(["c1", "c1", "c2"]), concept_set(["c1", "c1"]),
                    self.ORTHO)
        res2 = mist(concept_set(["c1", "c2"]), concept_set(["c1"]), self.ORTHO)
        assert res1.value == res2.value

    def test_recall_mode_bounded(self):
        rng = random.Random(20240515)
        names = list(self.ORTHO.table)
        for _ in range(100):
            sys_ids = [rng.choice(names) for _ in range(rng.randint(0, 4))]
            ref_ids = [rng.choice(names) for _ in range(rng.randint(1, 4))]
            res = mist(concept_set(sys_ids), concept_set(ref_ids), self.ORTHO)
            assert -1.0 <= res.value <= 1.0

    def test_end_to_end_with_linking(self):
        lex = build_lexicon([("chest pain", "c1"), ("fever", "c2")])
        sys_cs = link_concepts(tokenize("Patient has chest pain."), lex)
        ref_cs = link_concepts(tokenize("Chest pain and fever reported."), lex)
        res = mist(sys_cs, ref_cs, self.ORTHO)
        assert res.value == 0.5
