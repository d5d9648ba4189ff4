"""Co-occurring entity (facet) aggregation over retrieval results.

Counts are document counts: a document contributes once per distinct
normalized author, and once to its journal, regardless of how often the
entity appears in the text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .corpus import Corpus, NormalizedName, normalize_author_name
from .errors import DataError, UnknownDocumentError
from .textindex import ScoredDoc

DIMENSIONS = ("author", "journal")

FacetEntity = Union[NormalizedName, str]


@dataclass(frozen=True)
class FacetCount:
    """One facet entry: an author key or journal string plus its document count."""

    entity: FacetEntity
    count: int

    def rendered(self) -> str:
        return self.entity.render() if isinstance(self.entity, NormalizedName) else self.entity


def _result_doc_ids(result: Union[Iterable[str], Sequence[ScoredDoc]]) -> list[str]:
    doc_ids = []
    for item in result:
        doc_ids.append(item.doc_id if isinstance(item, ScoredDoc) else item)
    return doc_ids


def facet_counts(
    corpus: Corpus,
    result: Union[Iterable[str], Sequence[ScoredDoc]],
    dimension: str,
) -> list[FacetCount]:
    """Aggregate one facet dimension over a result set.

    Documents without the dimension's field contribute nothing.  Output is
    sorted by (count desc, rendered entity asc) for determinism.
    """
    if dimension not in DIMENSIONS:
        raise DataError(f"unknown facet dimension: {dimension!r}")

    counts: dict[FacetEntity, int] = {}
    for doc_id in set(_result_doc_ids(result)):
        record = corpus.get(doc_id)
        if record is None:
            raise UnknownDocumentError(doc_id)
        if dimension == "author":
            for name in {normalize_author_name(raw) for raw in record.authors}:
                counts[name] = counts.get(name, 0) + 1
        else:
            if record.journal:
                counts[record.journal] = counts.get(record.journal, 0) + 1

    entries = [FacetCount(entity=entity, count=count) for entity, count in counts.items()]
    entries.sort(key=lambda fc: (-fc.count, fc.rendered()))
    return entries
