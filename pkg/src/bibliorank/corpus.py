"""Scholarly record ingestion, author-name normalization and the citation graph.

The corpus file format is UTF-8 JSONL, one record per line:

    {"doc_id": "D1", "kind": "abstract_only", "title": "...", "abstract": "...",
     "fulltext": "...", "authors": ["White, H.D."], "journal": "...",
     "year": 1981, "references": ["D2", "ext:123"]}

Only ``doc_id`` is required.  Ingestion is tolerant by default: records with
quality problems are kept and the problem is reported as a warning.  In
strict mode every warning becomes a rejection and malformed lines abort the
run.  Duplicate doc_ids always reject the later record, in both modes.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import IngestError, InvalidNameError

KINDS = ("monograph", "fulltext_article", "abstract_only")

# Warning codes attach to accepted records (rejected in strict mode).
WARNING_CODES = (
    "missing_authors",
    "missing_journal",
    "duplicate_reference",
    "unparseable_year",
)

# Rejection codes mark records that are never stored.
REJECTION_CODES = (
    "malformed_json",
    "missing_doc_id",
    "duplicate_doc_id",
    "invalid_record",
)

_KNOWN_KEYS = frozenset(
    {
        "doc_id",
        "kind",
        "title",
        "abstract",
        "fulltext",
        "authors",
        "journal",
        "year",
        "references",
    }
)


@dataclass(frozen=True)
class NormalizedName:
    """Author key: diacritics-folded lowercase surname plus ordered initials."""

    surname: str
    initials: tuple[str, ...] = ()

    def render(self) -> str:
        """Canonical display form, e.g. ``white, h. d.`` — normalizing the
        rendered form returns the same key."""
        if not self.initials:
            return self.surname
        return self.surname + ", " + " ".join(i + "." for i in self.initials)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()


# letters NFKD cannot decompose
_TRANSLITERATIONS = str.maketrans(
    {
        "ß": "ss", "æ": "ae", "œ": "oe", "ø": "o", "đ": "d", "ð": "d",
        "þ": "th", "ł": "l", "ħ": "h", "ı": "i", "ŋ": "n",
        "Æ": "AE", "Œ": "OE", "Ø": "O", "Đ": "D", "Þ": "TH", "Ł": "L",
    }
)


def fold_to_ascii(text: str) -> str:
    """Strip combining marks and transliterate the common non-decomposable
    European letters."""
    decomposed = unicodedata.normalize("NFKD", text.translate(_TRANSLITERATIONS))
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def normalize_author_name(raw: str) -> NormalizedName:
    """Collapse a raw author string to a surname + initials key.

    ``"White, H.D."``, ``"H. D. White"`` and ``"h d white"`` all map to
    ``(white, (h, d))``.  Comma form takes the surname from the part before
    the first comma; otherwise the last whitespace token is the surname.
    Hyphenated surnames are preserved; hyphenated given names contribute
    one initial per part.  Diacritics are folded to ASCII.
    """
    folded = fold_to_ascii(raw).lower().strip()
    if not folded:
        raise InvalidNameError(f"empty author name: {raw!r}")

    if "," in folded:
        surname_part, _, given_part = folded.partition(",")
    else:
        tokens = folded.split()
        surname_part = tokens[-1]
        given_part = " ".join(tokens[:-1])

    surname = "".join(
        c for c in surname_part if c.isalnum() or c in "- '"
    ).strip(" -'")
    surname = " ".join(surname.split())
    if not surname:
        raise InvalidNameError(f"no surname in author name: {raw!r}")

    initials = []
    for token in given_part.replace(".", " ").replace("-", " ").split():
        ch = next((c for c in token if c.isalnum()), None)
        if ch is not None:
            initials.append(ch)
    return NormalizedName(surname=surname, initials=tuple(initials))


@dataclass
class DocumentRecord:
    """One scholarly item: metadata, optional full text, outgoing references."""

    doc_id: str
    kind: str = "abstract_only"
    title: str = ""
    abstract: str = ""
    fulltext: str | None = None
    authors: list[str] = field(default_factory=list)
    journal: str | None = None
    year: int | None = None
    references: list[str] = field(default_factory=list)

    def field_text(self, name: str) -> str:
        if name == "title":
            return self.title
        if name == "abstract":
            return self.abstract
        if name == "fulltext":
            return self.fulltext or ""
        raise KeyError(name)


@dataclass
class IngestReport:
    """Outcome of one ingestion run.

    ``warnings`` carry quality issues on accepted records (line number and
    one of WARNING_CODES); ``rejections`` carry dropped records (line number
    and one of REJECTION_CODES, or a warning code in strict mode).
    ``records_accepted + records_rejected`` equals the number of non-blank
    input lines.
    """

    records_accepted: int = 0
    records_rejected: int = 0
    warnings: list[tuple[int, str]] = field(default_factory=list)
    rejections: list[tuple[int, str]] = field(default_factory=list)
    unknown_keys: int = 0

    def to_dict(self) -> dict:
        return {
            "records_accepted": self.records_accepted,
            "records_rejected": self.records_rejected,
            "warnings": [[line, code] for line, code in self.warnings],
            "rejections": [[line, code] for line, code in self.rejections],
            "unknown_keys": self.unknown_keys,
        }


class Corpus:
    """Immutable-after-ingestion collection of DocumentRecords."""

    def __init__(self) -> None:
        self._docs: dict[str, DocumentRecord] = {}

    def __len__(self) -> int:
        return len(self._docs)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def __iter__(self) -> Iterator[DocumentRecord]:
        return iter(self._docs.values())

    def __getitem__(self, doc_id: str) -> DocumentRecord:
        return self._docs[doc_id]

    def get(self, doc_id: str) -> DocumentRecord | None:
        return self._docs.get(doc_id)

    def doc_ids(self) -> list[str]:
        return list(self._docs)

    def _add(self, record: DocumentRecord) -> None:
        self._docs[record.doc_id] = record


def _parse_year(value) -> tuple[int | None, bool]:
    """Return (year, ok). Accepts ints, integral floats and digit strings."""
    if value is None:
        return None, True
    if isinstance(value, bool):
        return None, False
    if isinstance(value, int):
        return value, True
    if isinstance(value, float) and value.is_integer():
        return int(value), True
    if isinstance(value, str):
        text = value.strip()
        if text.lstrip("-").isdigit():
            return int(text), True
    return None, False


def _parse_record(obj: dict) -> tuple[DocumentRecord, list[str], int]:
    """Build a record from a parsed JSON object.

    Returns (record, warning codes, unknown-key count).  Raises ValueError
    for structurally invalid records (bad kind, fulltext_article without
    full text).
    """
    warnings: list[str] = []
    unknown = sum(1 for key in obj if key not in _KNOWN_KEYS)

    kind = obj.get("kind", "abstract_only")
    if kind not in KINDS:
        raise ValueError(f"invalid kind: {kind!r}")

    fulltext = obj.get("fulltext")
    if fulltext is not None and not isinstance(fulltext, str):
        raise ValueError("fulltext must be a string")
    if kind == "fulltext_article" and not fulltext:
        raise ValueError("fulltext_article without fulltext")

    raw_authors = obj.get("authors") or []
    if not isinstance(raw_authors, list):
        raw_authors = []
    authors = [str(a).strip() for a in raw_authors if str(a).strip()]
    if not authors:
        warnings.append("missing_authors")

    journal = obj.get("journal")
    if journal is not None:
        journal = str(journal).strip() or None
    if journal is None:
        warnings.append("missing_journal")

    year, year_ok = _parse_year(obj.get("year"))
    if not year_ok:
        warnings.append("unparseable_year")

    raw_refs = obj.get("references") or []
    if not isinstance(raw_refs, list):
        raw_refs = []
    references: list[str] = []
    seen = set()
    had_duplicate = False
    for ref in raw_refs:
        key = str(ref).strip()
        if not key:
            continue
        if key in seen:
            had_duplicate = True
            continue
        seen.add(key)
        references.append(key)
    if had_duplicate:
        warnings.append("duplicate_reference")

    record = DocumentRecord(
        doc_id=obj["doc_id"],
        kind=kind,
        title=str(obj.get("title") or ""),
        abstract=str(obj.get("abstract") or ""),
        fulltext=fulltext,
        authors=authors,
        journal=journal,
        year=year,
        references=references,
    )
    return record, warnings, unknown


def ingest_records(
    source: Iterable[str] | IO[str], strict: bool = False
) -> tuple[Corpus, IngestReport]:
    """Ingest a line-oriented JSONL stream into a fresh corpus.

    Non-strict mode accepts records with quality warnings; strict mode
    rejects them and treats malformed lines (non-JSON, missing doc_id,
    invalid structure) as fatal.  Blank lines are skipped and do not count.
    """
    corpus = Corpus()
    report = IngestReport()

    for line_no, line in enumerate(source, 1):
        if not line.strip():
            continue

        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("record is not a JSON object")
        except (json.JSONDecodeError, ValueError) as exc:
            if strict:
                raise IngestError(f"line {line_no}: malformed record: {exc}")
            report.records_rejected += 1
            report.rejections.append((line_no, "malformed_json"))
            continue

        doc_id = obj.get("doc_id")
        if not isinstance(doc_id, str) or not doc_id:
            if strict:
                raise IngestError(f"line {line_no}: missing doc_id")
            report.records_rejected += 1
            report.rejections.append((line_no, "missing_doc_id"))
            continue

        if doc_id in corpus:
            # Later duplicate always loses, never fatal.
            report.records_rejected += 1
            report.rejections.append((line_no, "duplicate_doc_id"))
            continue

        try:
            record, warnings, unknown = _parse_record(obj)
        except ValueError as exc:
            if strict:
                raise IngestError(f"line {line_no}: invalid record: {exc}")
            report.records_rejected += 1
            report.rejections.append((line_no, "invalid_record"))
            continue

        report.unknown_keys += unknown
        if strict and warnings:
            report.records_rejected += 1
            for code in warnings:
                report.rejections.append((line_no, code))
            continue

        for code in warnings:
            report.warnings.append((line_no, code))
        report.records_accepted += 1
        corpus._add(record)

    return corpus, report


def load_corpus(path: str | Path, strict: bool = False) -> tuple[Corpus, IngestReport]:
    """Ingest a corpus JSONL file from disk."""
    with open(path, encoding="utf-8") as fh:
        return ingest_records(fh, strict=strict)


@dataclass
class CitationGraph:
    """Directed citing-to-cited relation plus author-to-document ownership.

    Cited endpoints that are not corpus doc_ids are kept as external keys:
    they still participate in reference intersections (coupling) but cannot
    be scanned as citing documents (co-citation).
    """

    doc_ids: set[str] = field(default_factory=set)
    out_refs: dict[str, tuple[str, ...]] = field(default_factory=dict)
    in_edges: dict[str, set[str]] = field(default_factory=dict)
    external_keys: set[str] = field(default_factory=set)
    author_docs: dict[NormalizedName, set[str]] = field(default_factory=dict)
    doc_authors: dict[str, tuple[NormalizedName, ...]] = field(default_factory=dict)

    @property
    def edges(self) -> set[tuple[str, str]]:
        return {
            (citing, cited)
            for citing, refs in self.out_refs.items()
            for cited in refs
        }

    def references(self, doc_id: str) -> tuple[str, ...]:
        return self.out_refs.get(doc_id, ())

    def citing_docs(self, cited_key: str) -> set[str]:
        return self.in_edges.get(cited_key, set())

    def has_author(self, author: NormalizedName) -> bool:
        return author in self.author_docs


def build_citation_graph(corpus: Corpus) -> CitationGraph:
    """Construct the citation graph and author ownership map for a corpus.

    References are already deduplicated per record at ingestion, so each
    distinct (citing, cited) pair yields exactly one edge.
    """
    graph = CitationGraph(doc_ids=set(corpus.doc_ids()))
    for record in corpus:
        refs = tuple(record.references)
        graph.out_refs[record.doc_id] = refs
        for cited in refs:
            graph.in_edges.setdefault(cited, set()).add(record.doc_id)
            if cited not in graph.doc_ids:
                graph.external_keys.add(cited)
        names: list[NormalizedName] = []
        for raw in record.authors:
            name = normalize_author_name(raw)
            graph.author_docs.setdefault(name, set()).add(record.doc_id)
            if name not in names:
                names.append(name)
        graph.doc_authors[record.doc_id] = tuple(names)
    return graph


@dataclass
class CorpusStats:
    monographs: int
    fulltext_articles: int
    abstracts: int
    total_docs: int
    distinct_authors: int
    internal_edges: int
    external_edges: int

    def to_dict(self) -> dict:
        return {
            "monographs": self.monographs,
            "fulltext_articles": self.fulltext_articles,
            "abstracts": self.abstracts,
            "total_docs": self.total_docs,
            "distinct_authors": self.distinct_authors,
            "internal_edges": self.internal_edges,
            "external_edges": self.external_edges,
        }


def corpus_stats(corpus: Corpus, graph: CitationGraph | None = None) -> CorpusStats:
    """Exact per-kind, author and edge counts; stable across runs."""
    if graph is None:
        graph = build_citation_graph(corpus)
    by_kind = {kind: 0 for kind in KINDS}
    for record in corpus:
        by_kind[record.kind] += 1
    internal = 0
    external = 0
    for refs in graph.out_refs.values():
        for cited in refs:
            if cited in graph.doc_ids:
                internal += 1
            else:
                external += 1
    return CorpusStats(
        monographs=by_kind["monograph"],
        fulltext_articles=by_kind["fulltext_article"],
        abstracts=by_kind["abstract_only"],
        total_docs=len(corpus),
        distinct_authors=len(graph.author_docs),
        internal_edges=internal,
        external_edges=external,
    )
