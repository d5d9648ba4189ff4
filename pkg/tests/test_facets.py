from __future__ import annotations

import random

import pytest

from bibliorank.corpus import NormalizedName, normalize_author_name
from bibliorank.errors import DataError, UnknownDocumentError
from bibliorank.facets import facet_counts
from bibliorank.textindex import ScoredDoc

from conftest import make_corpus


def test_empty_result_set(tiny_corpus):
    assert facet_counts(tiny_corpus, set(), "author") == []
    assert facet_counts(tiny_corpus, [], "journal") == []


def test_author_counts_are_document_counts():
    corpus, _ = make_corpus(
        [
            {"doc_id": "D1", "authors": ["A, X.", "B, Y."], "journal": "J", "year": 1},
            {"doc_id": "D2", "authors": ["A, X."], "journal": "J", "year": 1},
        ]
    )
    counts = facet_counts(corpus, {"D1", "D2"}, "author")
    assert [(fc.entity, fc.count) for fc in counts] == [
        (NormalizedName("a", ("x",)), 2),
        (NormalizedName("b", ("y",)), 1),
    ]


def test_ties_ordered_by_rendered_name():
    corpus, _ = make_corpus(
        [
            {"doc_id": "D1", "authors": ["B, Y."], "journal": "J", "year": 1},
            {"doc_id": "D2", "authors": ["A, X."], "journal": "J", "year": 1},
        ]
    )
    counts = facet_counts(corpus, {"D1", "D2"}, "author")
    assert [fc.rendered() for fc in counts] == ["a, x.", "b, y."]


def test_doc_contributes_once_per_distinct_author():
    corpus, _ = make_corpus(
        [{"doc_id": "D1", "authors": ["Kim, A.", "A. Kim"], "journal": "J", "year": 1}]
    )
    counts = facet_counts(corpus, {"D1"}, "author")
    assert [(fc.entity, fc.count) for fc in counts] == [(NormalizedName("kim", ("a",)), 1)]


def test_journal_dimension_skips_missing(tiny_corpus):
    counts = facet_counts(tiny_corpus, set(tiny_corpus.doc_ids()), "journal")
    assert [(fc.entity, fc.count) for fc in counts] == [("J.Nano", 2), ("J.Poly", 2)]


def test_accepts_scored_doc_lists(tiny_corpus):
    docs = [ScoredDoc("D01", 1.0, 1), ScoredDoc("D02", 0.5, 2)]
    by_list = facet_counts(tiny_corpus, docs, "author")
    by_set = facet_counts(tiny_corpus, {"D01", "D02"}, "author")
    assert by_list == by_set


def test_unknown_doc_id_named_in_error(tiny_corpus):
    with pytest.raises(UnknownDocumentError) as err:
        facet_counts(tiny_corpus, {"D01", "NOPE"}, "author")
    assert "NOPE" in str(err.value)


def test_unknown_dimension(tiny_corpus):
    with pytest.raises(DataError):
        facet_counts(tiny_corpus, {"D01"}, "year")


def test_sum_of_counts_equals_distinct_author_slots(tiny_corpus):
    result = set(tiny_corpus.doc_ids())
    counts = facet_counts(tiny_corpus, result, "author")
    total = sum(fc.count for fc in counts)
    expected = sum(
        len({normalize_author_name(a) for a in tiny_corpus[d].authors}) for d in result
    )
    assert total == expected


def test_disjoint_union_additivity(tiny_corpus):
    rng = random.Random(3)
    ids = tiny_corpus.doc_ids()
    rng.shuffle(ids)
    half = len(ids) // 2
    part_a, part_b = set(ids[:half]), set(ids[half:])
    merged = {}
    for part in (part_a, part_b):
        for fc in facet_counts(tiny_corpus, part, "author"):
            merged[fc.entity] = merged.get(fc.entity, 0) + fc.count
    combined = {fc.entity: fc.count for fc in facet_counts(tiny_corpus, part_a | part_b, "author")}
    assert merged == combined


def test_every_entity_occurs_in_result(tiny_corpus):
    result = {"D01", "D05"}
    for fc in facet_counts(tiny_corpus, result, "author"):
        assert any(
            fc.entity in {normalize_author_name(a) for a in tiny_corpus[d].authors}
            for d in result
        )
