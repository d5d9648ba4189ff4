"""Tokenization, inverted index and extended-Boolean TF-IDF retrieval.

Query strings use OR to separate groups; within a group every
whitespace-separated term and every double-quoted phrase must match
(AND semantics), e.g.::

    "carbon nanotubes" spintronics OR "raman spectroscopy"

A document matches when at least one group is fully satisfied.  Matching
is Boolean; ranking is TF-IDF:

    score(d) = sum over matched atoms a, over fields f containing a of
               boost(f) * (1 + ln tf(a,d,f)) * ln(1 + N / df(a,f))

Scores are comparable within one index only; ties break on ascending
doc_id.  Phrases require token adjacency within a single field, counted
after stop-word removal (removed positions collapse).
"""

from __future__ import annotations

import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, fold_to_ascii
from .errors import DataError, EmptyQueryError, QueryError
from .stem import stem
from .stopwords import STOP_WORDS
from .topics import TopicSpec

FIELDS = ("title", "abstract", "fulltext")
DEFAULT_BOOSTS = {"title": 3.0, "abstract": 2.0, "fulltext": 1.0}

_INDEX_FORMAT = "bibliorank-index"
_INDEX_VERSION = 1

_SPLIT_RE = re.compile(r"[^a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase, fold diacritics, split on non-alphanumerics, drop stop
    words, stem the survivors.  Order-preserving and deterministic."""
    folded = fold_to_ascii(text.lower())
    return [
        stem(token)
        for token in _SPLIT_RE.split(folded)
        if token and token not in STOP_WORDS
    ]


@dataclass(frozen=True)
class Atom:
    """One query atom: a bare term or a quoted phrase."""

    text: str
    phrase: bool = False


@dataclass(frozen=True)
class Query:
    """OR of groups; AND of atoms within a group."""

    groups: tuple[tuple[Atom, ...], ...]


def parse_query(text: str) -> Query:
    """Parse the query-string syntax into a Query.

    The separator keyword is the bare uppercase token ``OR``; a lowercase
    ``or`` is an ordinary term (and a stop word).  Raises QueryError for
    unterminated quotes and empty groups.
    """
    groups: list[tuple[Atom, ...]] = []
    current: list[Atom] = []

    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == '"':
            end = text.find('"', pos + 1)
            if end == -1:
                raise QueryError(f"unterminated phrase quote in query: {text!r}")
            phrase = text[pos + 1 : end].strip()
            if phrase:
                current.append(Atom(phrase, phrase=True))
            pos = end + 1
            continue
        end = pos
        while end < n and not text[end].isspace() and text[end] != '"':
            end += 1
        word = text[pos:end]
        pos = end
        if word == "OR":
            if not current:
                raise QueryError("empty query group before OR")
            groups.append(tuple(current))
            current = []
        else:
            current.append(Atom(word))

    if current:
        groups.append(tuple(current))
    elif groups:
        raise QueryError("empty query group after OR")
    if not groups:
        raise QueryError("empty query")
    return Query(groups=tuple(groups))


# A compiled atom is the non-empty tuple of its stemmed tokens; a bare term
# that splits into several tokens becomes several independent atoms.
CompiledAtom = tuple[str, ...]


def compile_query(query: Query | str) -> list[list[CompiledAtom]]:
    """Tokenize a query's atoms, dropping any atom (or group) that loses all
    tokens to stop-word removal.  Raises EmptyQueryError when nothing at all
    survives."""
    if isinstance(query, str):
        query = parse_query(query)
    groups: list[list[CompiledAtom]] = []
    for raw_group in query.groups:
        group: list[CompiledAtom] = []
        for atom in raw_group:
            tokens = tokenize(atom.text)
            if not tokens:
                continue
            if atom.phrase:
                group.append(tuple(tokens))
            else:
                group.extend((tok,) for tok in tokens)
        deduped: list[CompiledAtom] = []
        for compiled in group:
            if compiled not in deduped:
                deduped.append(compiled)
        if deduped:
            groups.append(deduped)
    if not groups:
        raise EmptyQueryError("no query token survived tokenization")
    return groups


@dataclass
class ScoredDoc:
    """One ranked retrieval hit (rank is 1-based)."""

    doc_id: str
    score: float
    rank: int


@dataclass
class Index:
    """Immutable inverted index over title/abstract/fulltext.

    ``postings[field][term]`` maps doc_id to the term's positions in that
    field's token stream; document frequency is the size of that map.
    """

    n_docs: int
    boosts: dict[str, float]
    postings: dict[str, dict[str, dict[str, tuple[int, ...]]]]
    doc_ids: tuple[str, ...] = ()

    def df(self, term: str, fld: str) -> int:
        return len(self.postings[fld].get(term, {}))

    # -- serialization (versioned, internal format) --

    def to_payload(self) -> dict:
        return {
            "format": _INDEX_FORMAT,
            "version": _INDEX_VERSION,
            "n_docs": self.n_docs,
            "boosts": self.boosts,
            "doc_ids": list(self.doc_ids),
            "postings": {
                fld: {
                    term: [[doc_id, list(positions)] for doc_id, positions in sorted(docs.items())]
                    for term, docs in sorted(terms.items())
                }
                for fld, terms in self.postings.items()
            },
        }

    def save(self, path: str | Path) -> None:
        payload = json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":"))
        Path(path).write_text(payload + "\n", encoding="utf-8")

    @classmethod
    def from_payload(cls, payload: dict) -> "Index":
        if payload.get("format") != _INDEX_FORMAT:
            raise DataError("not a bibliorank index file")
        if payload.get("version") != _INDEX_VERSION:
            raise DataError(f"unsupported index version: {payload.get('version')!r}")
        postings = {
            fld: {
                term: {doc_id: tuple(positions) for doc_id, positions in entries}
                for term, entries in terms.items()
            }
            for fld, terms in payload["postings"].items()
        }
        return cls(
            n_docs=payload["n_docs"],
            boosts={f: float(b) for f, b in payload["boosts"].items()},
            postings=postings,
            doc_ids=tuple(payload["doc_ids"]),
        )

    @classmethod
    def load(cls, path: str | Path) -> "Index":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DataError(f"unreadable index file {path}: {exc}")
        return cls.from_payload(payload)


def _tokenize_record(record) -> tuple[str, dict[str, list[str]]]:
    return record.doc_id, {fld: tokenize(record.field_text(fld)) for fld in FIELDS}


def build_index(
    corpus: Corpus,
    boosts: dict[str, float] | None = None,
    threads: int = 1,
) -> Index:
    """Build the inverted index.  Output is independent of ``threads``:
    workers only tokenize, and postings merge in corpus order."""
    if boosts is None:
        boosts = dict(DEFAULT_BOOSTS)
    missing = [f for f in FIELDS if f not in boosts]
    if missing:
        raise DataError(f"field boosts missing for: {', '.join(missing)}")
    bad = [f for f, b in boosts.items() if f in FIELDS and b <= 0]
    if bad:
        raise DataError(f"field boosts must be positive: {', '.join(bad)}")
    boosts = {f: float(boosts[f]) for f in FIELDS}

    records = list(corpus)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tokenized = list(pool.map(_tokenize_record, records, chunksize=64))
    else:
        tokenized = [_tokenize_record(rec) for rec in records]

    postings: dict[str, dict[str, dict[str, tuple[int, ...]]]] = {f: {} for f in FIELDS}
    for doc_id, fields in tokenized:
        for fld, tokens in fields.items():
            seen: dict[str, list[int]] = {}
            for position, token in enumerate(tokens):
                seen.setdefault(token, []).append(position)
            field_postings = postings[fld]
            for token, positions in seen.items():
                field_postings.setdefault(token, {})[doc_id] = tuple(positions)

    return Index(
        n_docs=len(corpus),
        boosts=boosts,
        postings=postings,
        doc_ids=tuple(r.doc_id for r in records),
    )


def _atom_occurrences(index: Index, atom: CompiledAtom) -> dict[str, dict[str, int]]:
    """Per-field doc -> occurrence count for a compiled atom.

    For a single token this is the posting's tf; for a phrase it counts
    adjacent runs of the tokens within one field.
    """
    result: dict[str, dict[str, int]] = {}
    for fld in FIELDS:
        terms = index.postings[fld]
        if len(atom) == 1:
            docs = terms.get(atom[0])
            if docs:
                result[fld] = {doc_id: len(positions) for doc_id, positions in docs.items()}
            continue
        maps = [terms.get(token) for token in atom]
        if any(m is None for m in maps):
            continue
        candidates = set(maps[0])
        for m in maps[1:]:
            candidates &= set(m)
        counts: dict[str, int] = {}
        for doc_id in candidates:
            position_sets = [set(m[doc_id]) for m in maps[1:]]
            hits = sum(
                1
                for start in maps[0][doc_id]
                if all(start + offset + 1 in s for offset, s in enumerate(position_sets))
            )
            if hits:
                counts[doc_id] = hits
        if counts:
            result[fld] = counts
    return result


def _distinct_atoms(groups: list[list[CompiledAtom]]) -> list[CompiledAtom]:
    ordered: list[CompiledAtom] = []
    for group in groups:
        for atom in group:
            if atom not in ordered:
                ordered.append(atom)
    return ordered


def _match_docs(
    groups: list[list[CompiledAtom]],
    occurrences: dict[CompiledAtom, dict[str, dict[str, int]]],
) -> set[str]:
    matched: set[str] = set()
    for group in groups:
        group_docs: set[str] | None = None
        for atom in group:
            atom_docs: set[str] = set()
            for counts in occurrences[atom].values():
                atom_docs.update(counts)
            group_docs = atom_docs if group_docs is None else group_docs & atom_docs
            if not group_docs:
                break
        if group_docs:
            matched.update(group_docs)
    return matched


def search(index: Index, query: Query | str, k: int | None = None) -> list[ScoredDoc]:
    """Rank the documents matching the query.

    Every distinct atom the document contains contributes, whichever group
    admitted the document.  Results sort by (score desc, doc_id asc) and
    are truncated to ``k`` when given.
    """
    if k is not None and k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    groups = compile_query(query)
    atoms = _distinct_atoms(groups)
    occurrences = {atom: _atom_occurrences(index, atom) for atom in atoms}
    matched = _match_docs(groups, occurrences)
    if not matched:
        return []

    scores = dict.fromkeys(matched, 0.0)
    n = index.n_docs
    for atom in atoms:
        for fld in FIELDS:
            counts = occurrences[atom].get(fld)
            if not counts:
                continue
            idf = math.log(1.0 + n / len(counts))
            boost = index.boosts[fld]
            for doc_id, tf in counts.items():
                if doc_id in scores:
                    scores[doc_id] += boost * (1.0 + math.log(tf)) * idf

    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    if k is not None:
        ranked = ranked[:k]
    return [
        ScoredDoc(doc_id=doc_id, score=score, rank=rank)
        for rank, (doc_id, score) in enumerate(ranked, 1)
    ]


def topic_subset(index: Index, topic: TopicSpec | Query | str) -> set[str]:
    """Unranked match set of a topic query — identical to the doc_id set of
    an uncapped search."""
    query = topic.query if isinstance(topic, TopicSpec) else topic
    groups = compile_query(query)
    atoms = _distinct_atoms(groups)
    occurrences = {atom: _atom_occurrences(index, atom) for atom in atoms}
    return _match_docs(groups, occurrences)
