from __future__ import annotations

import json

import pytest

from bibliorank.corpus import build_citation_graph, ingest_records


def to_lines(records):
    return [json.dumps(record) for record in records]


def make_corpus(records, strict=False):
    return ingest_records(to_lines(records), strict=strict)


@pytest.fixture
def tiny_records():
    """Ten documents, two journals, a small citation web."""
    return [
        {
            "doc_id": "D01",
            "kind": "fulltext_article",
            "title": "carbon nanotube spintronics",
            "abstract": "spin transport in carbon nanotubes",
            "fulltext": "long text about carbon nanotubes and spintronics devices",
            "authors": ["White, H.D.", "Kim, A."],
            "journal": "J.Nano",
            "year": 2008,
            "references": ["D02", "D03", "X1"],
        },
        {
            "doc_id": "D02",
            "kind": "abstract_only",
            "title": "raman spectroscopy of polymers",
            "abstract": "raman spectra of polymer films",
            "authors": ["Kim, A."],
            "journal": "J.Nano",
            "year": 2005,
            "references": ["X1", "X2"],
        },
        {
            "doc_id": "D03",
            "kind": "monograph",
            "title": "polymer physics",
            "abstract": "",
            "authors": ["Mueller, R."],
            "journal": None,
            "year": 1999,
            "references": [],
        },
        {
            "doc_id": "D04",
            "kind": "abstract_only",
            "title": "neutron scattering in polymers",
            "abstract": "inelastic neutron scattering on polymer melts",
            "authors": ["White, H.D."],
            "journal": "J.Poly",
            "year": 2011,
            "references": ["D01", "D02"],
        },
        {
            "doc_id": "D05",
            "kind": "abstract_only",
            "title": "blood flow simulation",
            "abstract": "viscosity of blood and microswimmers",
            "authors": ["Santos, M.", "A. Kim"],
            "journal": "J.Poly",
            "year": 2010,
            "references": ["D03", "X2"],
        },
    ]


@pytest.fixture
def tiny_corpus(tiny_records):
    corpus, report = make_corpus(tiny_records)
    assert report.records_rejected == 0
    return corpus


@pytest.fixture
def tiny_graph(tiny_corpus):
    return build_citation_graph(tiny_corpus)
