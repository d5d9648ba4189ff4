"""Citation-graph analytics and the re-rankers built on them.

Similarity strengths are raw co-occurrence counts, not normalized
coefficients.  Bibliographic coupling counts shared citation keys, so
references pointing outside the corpus still count; co-citation scans
citing documents, which by definition live inside the corpus — an
asymmetry inherited from the data, not a bug.

Both re-rankers are stable permutations of their input: when the
informetric signal is absent everywhere the original order comes back
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import CitationGraph, Corpus, NormalizedName
from .errors import DataError, UnknownAuthorError, UnknownDocumentError
from .facets import FacetCount, facet_counts
from .textindex import ScoredDoc

MODES = ("coupling", "cocitation")


@dataclass(frozen=True)
class AuthorSimilarity:
    """One similar-author entry: positive strength under one mode."""

    author: NormalizedName
    strength: int
    mode: str


@dataclass
class BradfordZones:
    """Journals sorted by article count with their greedy zone assignment."""

    entries: list[tuple[str, int, int]]  # (journal, article count, zone 1..Z)
    zones_requested: int

    def zone_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for _, _, zone in self.entries:
            sizes[zone] = sizes.get(zone, 0) + 1
        return sizes

    def zone_totals(self) -> dict[int, int]:
        totals: dict[int, int] = {}
        for _, count, zone in self.entries:
            totals[zone] = totals.get(zone, 0) + count
        return totals


def _require_doc(graph: CitationGraph, doc_id: str) -> None:
    if doc_id not in graph.doc_ids:
        raise UnknownDocumentError(doc_id)


def _require_author(graph: CitationGraph, author: NormalizedName) -> None:
    if author not in graph.author_docs:
        raise UnknownAuthorError(author)


def _author_references(graph: CitationGraph, author: NormalizedName) -> set[str]:
    refs: set[str] = set()
    for doc_id in graph.author_docs[author]:
        refs.update(graph.out_refs.get(doc_id, ()))
    return refs


def _citing_docs_of_author(graph: CitationGraph, author: NormalizedName) -> set[str]:
    citing: set[str] = set()
    for doc_id in graph.author_docs[author]:
        citing.update(graph.in_edges.get(doc_id, ()))
    return citing


def coupling_docs(graph: CitationGraph, d1: str, d2: str) -> int:
    """Number of citation keys two documents share (internal or external)."""
    _require_doc(graph, d1)
    _require_doc(graph, d2)
    if d1 == d2:
        raise DataError(f"self-coupling is undefined: {d1!r}")
    return len(set(graph.references(d1)) & set(graph.references(d2)))


def coupling_authors(graph: CitationGraph, a1: NormalizedName, a2: NormalizedName) -> int:
    """Shared citation keys between the reference unions of two authors."""
    _require_author(graph, a1)
    _require_author(graph, a2)
    if a1 == a2:
        raise DataError(f"self-coupling is undefined: {a1.render()!r}")
    return len(_author_references(graph, a1) & _author_references(graph, a2))


def cocitation_authors(graph: CitationGraph, a1: NormalizedName, a2: NormalizedName) -> int:
    """Number of documents citing at least one work of each author."""
    _require_author(graph, a1)
    _require_author(graph, a2)
    if a1 == a2:
        raise DataError(f"self-co-citation is undefined: {a1.render()!r}")
    return len(_citing_docs_of_author(graph, a1) & _citing_docs_of_author(graph, a2))


def rank_similar_authors(
    graph: CitationGraph,
    target: NormalizedName,
    mode: str = "coupling",
    limit: int | None = None,
) -> list[AuthorSimilarity]:
    """All authors with positive similarity to the target, strongest first.

    Sorted by (strength desc, rendered name asc) and truncated to ``limit``;
    the target itself is excluded.
    """
    _require_author(graph, target)
    if mode not in MODES:
        raise DataError(f"unknown similarity mode: {mode!r}")

    strengths: dict[NormalizedName, int] = {}
    if mode == "coupling":
        target_refs = _author_references(graph, target)
        if target_refs:
            for author in graph.author_docs:
                if author == target:
                    continue
                shared = len(target_refs & _author_references(graph, author))
                if shared:
                    strengths[author] = shared
    else:
        for citing in _citing_docs_of_author(graph, target):
            cited_authors: set[NormalizedName] = set()
            for cited in graph.references(citing):
                for author in graph.doc_authors.get(cited, ()):
                    cited_authors.add(author)
            for author in cited_authors:
                if author != target:
                    strengths[author] = strengths.get(author, 0) + 1

    ranked = sorted(strengths.items(), key=lambda item: (-item[1], item[0].render()))
    if limit is not None:
        ranked = ranked[:limit]
    return [AuthorSimilarity(author=a, strength=s, mode=mode) for a, s in ranked]


def bradford_zones(
    counts: Sequence[FacetCount] | Sequence[tuple[str, int]],
    zones: int,
) -> BradfordZones:
    """Split journals into zones of roughly equal article yield.

    Walks journals in (count desc, name asc) order accumulating article
    counts and closes zone z once the running total reaches z * total / zones.
    Trailing zones collapse when there are not enough journals.
    """
    if zones < 1:
        raise DataError(f"zones must be >= 1, got {zones}")
    pairs: list[tuple[str, int]] = []
    for item in counts:
        if isinstance(item, FacetCount):
            pairs.append((str(item.entity), item.count))
        else:
            journal, count = item
            pairs.append((str(journal), int(count)))
    if not pairs:
        raise DataError("bradford_zones needs at least one journal count")
    if any(count < 1 for _, count in pairs):
        raise DataError("journal article counts must be positive")

    pairs.sort(key=lambda jc: (-jc[1], jc[0]))
    total = sum(count for _, count in pairs)
    entries: list[tuple[str, int, int]] = []
    zone = 1
    cumulative = 0
    for journal, count in pairs:
        cumulative += count
        entries.append((journal, count, zone))
        if zone < zones and cumulative * zones >= zone * total:
            zone += 1
    return BradfordZones(entries=entries, zones_requested=zones)


def bradfordize_rerank(corpus: Corpus, result: Sequence[ScoredDoc]) -> list[ScoredDoc]:
    """Re-rank a result so documents from the most productive journals within
    the result come first.

    Order: journal's article count within the result desc, then original
    score desc, then doc_id asc; documents without a journal follow all
    journal-bearing ones.  The new score is the journal's in-result count.
    """
    if not result:
        return []
    journal_counts = {
        fc.entity: fc.count for fc in facet_counts(corpus, result, "journal")
    }

    def sort_key(doc: ScoredDoc):
        journal = corpus[doc.doc_id].journal
        count = journal_counts.get(journal, 0) if journal else 0
        return (0 if journal else 1, -count, -doc.score, doc.doc_id)

    reordered = sorted(result, key=sort_key)
    out: list[ScoredDoc] = []
    for rank, doc in enumerate(reordered, 1):
        journal = corpus[doc.doc_id].journal
        count = journal_counts.get(journal, 0) if journal else 0
        out.append(ScoredDoc(doc_id=doc.doc_id, score=float(count), rank=rank))
    return out


def informetric_rerank(
    graph: CitationGraph,
    result: Sequence[ScoredDoc],
    seeds: Iterable[NormalizedName],
    mode: str = "coupling",
) -> list[ScoredDoc]:
    """Re-rank a result by citation affinity to a set of seed authors.

    coupling:   score'(d) = shared citation keys between d's references and
                the union of the seed authors' references.
    cocitation: score'(d) = citing documents that cite d and also cite at
                least one document of a seed author.

    Ties keep the original rank order, so a signal-free result degrades to
    the input ranking.
    """
    if mode not in MODES:
        raise DataError(f"unknown re-ranking mode: {mode!r}")
    seed_list = list(seeds)
    if not seed_list:
        raise DataError("informetric_rerank needs at least one seed author")
    for seed in seed_list:
        _require_author(graph, seed)
    for doc in result:
        _require_doc(graph, doc.doc_id)

    if mode == "coupling":
        seed_refs: set[str] = set()
        for seed in seed_list:
            seed_refs.update(_author_references(graph, seed))
        raw_scores = {
            doc.doc_id: len(set(graph.references(doc.doc_id)) & seed_refs)
            for doc in result
        }
    else:
        citing_seed: set[str] = set()
        for seed in seed_list:
            citing_seed.update(_citing_docs_of_author(graph, seed))
        raw_scores = {
            doc.doc_id: len(graph.citing_docs(doc.doc_id) & citing_seed)
            for doc in result
        }

    reordered = sorted(result, key=lambda doc: (-raw_scores[doc.doc_id], doc.rank))
    return [
        ScoredDoc(doc_id=doc.doc_id, score=float(raw_scores[doc.doc_id]), rank=rank)
        for rank, doc in enumerate(reordered, 1)
    ]
