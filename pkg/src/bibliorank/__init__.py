"""Informetric retrieval toolkit.

Index scholarly corpora, retrieve topical subsets, aggregate co-occurring
entities, re-rank by bibliographic coupling / author co-citation /
Bradford zones, and evaluate important-author coverage across document
pools.
"""

from .corpus import (
    CitationGraph,
    Corpus,
    DocumentRecord,
    IngestReport,
    NormalizedName,
    build_citation_graph,
    corpus_stats,
    ingest_records,
    load_corpus,
    normalize_author_name,
)
from .evaluation import (
    CoverageReport,
    CoverageRow,
    coverage_percent,
    coverage_report,
    coverage_row,
    match_author,
)
from .facets import FacetCount, facet_counts
from .informetrics import (
    AuthorSimilarity,
    BradfordZones,
    bradford_zones,
    bradfordize_rerank,
    cocitation_authors,
    coupling_authors,
    coupling_docs,
    informetric_rerank,
    rank_similar_authors,
)
from .synthgen import SynthParams, generate_corpus, lotka_counts, write_bundle
from .textindex import Index, Query, ScoredDoc, build_index, parse_query, search, tokenize, topic_subset
from .topics import GoldAuthor, GoldSet, TopicSpec, load_gold_sets, load_topics

__version__ = "0.1.0"

__all__ = [
    "AuthorSimilarity",
    "BradfordZones",
    "CitationGraph",
    "Corpus",
    "CoverageReport",
    "CoverageRow",
    "DocumentRecord",
    "FacetCount",
    "GoldAuthor",
    "GoldSet",
    "Index",
    "IngestReport",
    "NormalizedName",
    "Query",
    "ScoredDoc",
    "SynthParams",
    "TopicSpec",
    "bradford_zones",
    "bradfordize_rerank",
    "build_citation_graph",
    "build_index",
    "cocitation_authors",
    "corpus_stats",
    "coupling_authors",
    "coupling_docs",
    "coverage_percent",
    "coverage_report",
    "coverage_row",
    "facet_counts",
    "generate_corpus",
    "informetric_rerank",
    "ingest_records",
    "load_corpus",
    "load_gold_sets",
    "load_topics",
    "lotka_counts",
    "match_author",
    "normalize_author_name",
    "parse_query",
    "rank_similar_authors",
    "search",
    "tokenize",
    "topic_subset",
    "write_bundle",
]
