"""Important-author coverage evaluation across three document pools.

For one topic the pools are: (1) the whole corpus, (2) the topic subset
retrieved by the topic query, (3) the top-k of that subset under a chosen
ranker.  A gold author counts as covered in a pool when at least one
document owned by one of their matched corpus author keys lies in the
pool; IAD counts the distinct pooled documents owned by any matched
important author.

Gold-to-corpus matching replaces manual name verification with an
auditable surname + initials heuristic: equal surname, and the gold
initials must be a prefix of (or equal to) the candidate's, with an empty
sequence on either side matching anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from typing import Iterable, Sequence

from .corpus import CitationGraph, Corpus, NormalizedName
from .errors import DataError
from .informetrics import bradfordize_rerank, informetric_rerank
from .textindex import Index, search
from .topics import IMPORTANT_RATING_THRESHOLD, GoldAuthor, GoldSet, TopicSpec

RANKERS = ("tfidf", "bradford", "coupling", "cocitation")

COLUMNS = (
    "ia_named",
    "ia_in_corpus",
    "ia_in_subset",
    "ia_in_topk",
    "subset_size",
    "iad_in_corpus",
    "iad_in_subset",
    "iad_in_topk",
)


@dataclass
class CoverageRow:
    """One Table-style row: IA and IAD coverage for a single topic."""

    topic_id: str
    ia_named: int
    ia_in_corpus: int
    ia_in_subset: int
    ia_in_topk: int
    subset_size: int
    iad_in_corpus: int
    iad_in_subset: int
    iad_in_topk: int
    k: int

    def __post_init__(self) -> None:
        if not self.ia_in_topk <= self.ia_in_subset <= self.ia_in_corpus <= self.ia_named:
            raise DataError(f"{self.topic_id}: IA counts must not grow down the pool chain")
        if not self.iad_in_topk <= self.iad_in_subset <= self.iad_in_corpus:
            raise DataError(f"{self.topic_id}: IAD counts must not grow down the pool chain")
        if self.iad_in_topk > self.k:
            raise DataError(f"{self.topic_id}: iad_in_topk exceeds k")
        if self.iad_in_subset > self.subset_size:
            raise DataError(f"{self.topic_id}: iad_in_subset exceeds subset size")

    def values(self) -> tuple[int, ...]:
        return tuple(getattr(self, column) for column in COLUMNS)


@dataclass
class CoverageReport:
    """Per-topic rows plus the 1-decimal averages row and, when gold sets
    were supplied, the deduplicated important-author summary."""

    rows: list[CoverageRow]
    averages: dict[str, Decimal]
    k: int
    unique_ia_named: int | None = None
    unique_ia_matched: int | None = None
    unique_ia_percent: float | None = None


def match_author(gold: GoldAuthor, graph: CitationGraph) -> set[NormalizedName]:
    """Corpus author keys compatible with a gold author.

    Same surname; empty initials on either side act as a wildcard;
    otherwise one initials sequence must be a prefix of (or equal to) the
    other, gold-side first.
    """
    matches: set[NormalizedName] = set()
    gold_initials = gold.name.initials
    for candidate in graph.author_docs:
        if candidate.surname != gold.name.surname:
            continue
        cand_initials = candidate.initials
        if not gold_initials or not cand_initials:
            matches.add(candidate)
        elif len(gold_initials) <= len(cand_initials):
            if cand_initials[: len(gold_initials)] == gold_initials:
                matches.add(candidate)
    return matches


def _matched_docs(gold: GoldAuthor, graph: CitationGraph) -> set[str]:
    docs: set[str] = set()
    for key in match_author(gold, graph):
        docs.update(graph.author_docs[key])
    return docs


def coverage_row(
    corpus: Corpus,
    index: Index,
    graph: CitationGraph,
    topic: TopicSpec,
    gold: GoldSet,
    k: int = 50,
    ranker: str = "tfidf",
    seeds: Iterable[NormalizedName] | None = None,
    threshold: int = IMPORTANT_RATING_THRESHOLD,
) -> CoverageRow:
    """Compute one topic's coverage row.

    ``seeds`` feeds the coupling/cocitation rankers; when omitted, the
    matched important gold authors stand in for the target researcher.  If
    that default resolves to nobody the ranking falls back to TF-IDF order.
    """
    if topic.topic_id != gold.topic_id:
        raise DataError(
            f"topic/gold mismatch: {topic.topic_id!r} vs {gold.topic_id!r}"
        )
    if k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    if ranker not in RANKERS:
        raise DataError(f"unknown ranker: {ranker!r}")

    ranked = search(index, topic.query, k=None)
    subset = {doc.doc_id for doc in ranked}

    important = gold.important_authors(threshold)
    matched_doc_sets = [_matched_docs(author, graph) for author in important]

    if ranker == "bradford":
        ranked = bradfordize_rerank(corpus, ranked)
    elif ranker in ("coupling", "cocitation"):
        seed_set = set(seeds) if seeds is not None else None
        if seed_set is None:
            seed_set = set()
            for author in important:
                seed_set.update(match_author(author, graph))
        if seeds is not None or seed_set:
            ranked = informetric_rerank(graph, ranked, seed_set, mode=ranker)

    topk = {doc.doc_id for doc in ranked[:k]}

    ia_in_corpus = sum(1 for docs in matched_doc_sets if docs)
    ia_in_subset = sum(1 for docs in matched_doc_sets if docs & subset)
    ia_in_topk = sum(1 for docs in matched_doc_sets if docs & topk)
    all_docs: set[str] = set().union(*matched_doc_sets) if matched_doc_sets else set()

    return CoverageRow(
        topic_id=topic.topic_id,
        ia_named=len(important),
        ia_in_corpus=ia_in_corpus,
        ia_in_subset=ia_in_subset,
        ia_in_topk=ia_in_topk,
        subset_size=len(subset),
        iad_in_corpus=len(all_docs),
        iad_in_subset=len(all_docs & subset),
        iad_in_topk=len(all_docs & topk),
        k=k,
    )


def _mean_1dp(total: int, count: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 50
        return (Decimal(total) / Decimal(count)).quantize(
            Decimal("0.1"), rounding=ROUND_HALF_UP
        )


def coverage_report(
    rows: Sequence[CoverageRow],
    gold_sets: Sequence[GoldSet] | None = None,
    graph: CitationGraph | None = None,
    threshold: int = IMPORTANT_RATING_THRESHOLD,
) -> CoverageReport:
    """Aggregate rows into a report: per-column arithmetic means rendered to
    one decimal (half-up) and, when gold sets and graph are given, the
    cross-topic unique important-author summary."""
    if not rows:
        raise DataError("coverage_report needs at least one row")
    ks = {row.k for row in rows}
    if len(ks) > 1:
        raise DataError(f"rows mix different k values: {sorted(ks)}")

    averages = {
        column: _mean_1dp(sum(getattr(row, column) for row in rows), len(rows))
        for column in COLUMNS
    }
    report = CoverageReport(rows=list(rows), averages=averages, k=ks.pop())

    if gold_sets is not None and graph is not None:
        unique: dict[NormalizedName, GoldAuthor] = {}
        for gold_set in gold_sets:
            for author in gold_set.important_authors(threshold):
                unique.setdefault(author.name, author)
        report.unique_ia_named = len(unique)
        report.unique_ia_matched = sum(
            1 for author in unique.values() if match_author(author, graph)
        )
        if report.unique_ia_named:
            report.unique_ia_percent = coverage_percent(
                report.unique_ia_matched, report.unique_ia_named
            )
    return report


def coverage_percent(matched: int, named: int) -> float:
    """100 * matched / named rendered to one decimal, half-up."""
    if named <= 0:
        raise DataError("named author count must be positive")
    if not 0 <= matched <= named:
        raise DataError(f"matched must lie in 0..{named}, got {matched}")
    with localcontext() as ctx:
        ctx.prec = 50
        value = (Decimal(100) * Decimal(matched) / Decimal(named)).quantize(
            Decimal("0.1"), rounding=ROUND_HALF_UP
        )
    return float(value)


def match_report(
    gold_sets: Sequence[GoldSet],
    graph: CitationGraph,
    threshold: int = IMPORTANT_RATING_THRESHOLD,
) -> list[dict]:
    """Ambiguity audit: per important gold author, the matched corpus keys.

    IAD counts treat every matched key's documents as the author's, so a
    candidate count above 1 flags rows whose IAD may be inflated by
    namesakes.
    """
    audit: list[dict] = []
    for gold_set in gold_sets:
        for author in gold_set.important_authors(threshold):
            keys = sorted(key.render() for key in match_author(author, graph))
            audit.append(
                {
                    "topic_id": gold_set.topic_id,
                    "author": author.raw_name,
                    "normalized": author.name.render(),
                    "candidates": len(keys),
                    "matched_keys": keys,
                }
            )
    return audit


def render_report_tsv(report: CoverageReport) -> str:
    """Table-style TSV: header, one row per topic, then the avg. row."""
    header = "topic\t" + "\t".join(COLUMNS)
    lines = [header]
    for row in report.rows:
        lines.append(row.topic_id + "\t" + "\t".join(str(v) for v in row.values()))
    lines.append("avg.\t" + "\t".join(str(report.averages[c]) for c in COLUMNS))
    return "\n".join(lines) + "\n"


def report_to_dict(report: CoverageReport) -> dict:
    """JSON mirror of the TSV report."""
    payload: dict = {
        "k": report.k,
        "columns": list(COLUMNS),
        "rows": [
            {"topic_id": row.topic_id, **dict(zip(COLUMNS, row.values()))}
            for row in report.rows
        ],
        "averages": {c: float(report.averages[c]) for c in COLUMNS},
    }
    if report.unique_ia_named is not None:
        payload["unique_important_authors"] = {
            "named": report.unique_ia_named,
            "matched_in_corpus": report.unique_ia_matched,
            "percent": report.unique_ia_percent,
        }
    return payload
