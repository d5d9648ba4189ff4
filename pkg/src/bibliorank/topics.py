"""Topic and gold-set file formats.

Topics file: JSONL, one object per line with ``topic_id``, ``description``
and ``query`` (query-string syntax from :mod:`bibliorank.textindex`).

Gold file: JSONL, one object per (topic, author) pair with ``topic_id``,
``author`` (raw name string), optional ``rating`` (integer 1..10) and
``explicit`` (boolean, default false).  An author is *important* when
rated >= 5 or explicitly named.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .corpus import NormalizedName, normalize_author_name
from .errors import DataError

IMPORTANT_RATING_THRESHOLD = 5


@dataclass(frozen=True)
class TopicSpec:
    """One research-interest query."""

    topic_id: str
    description: str
    query: str


@dataclass(frozen=True)
class GoldAuthor:
    """One interview-rated author."""

    raw_name: str
    name: NormalizedName
    rating: int | None = None
    explicit: bool = False

    def important(self, threshold: int = IMPORTANT_RATING_THRESHOLD) -> bool:
        return self.explicit or (self.rating is not None and self.rating >= threshold)


@dataclass
class GoldSet:
    """All rated authors for one topic; names unique after normalization."""

    topic_id: str
    authors: list[GoldAuthor] = field(default_factory=list)

    def important_authors(self, threshold: int = IMPORTANT_RATING_THRESHOLD) -> list[GoldAuthor]:
        return [a for a in self.authors if a.important(threshold)]


def load_topics(source: str | Path | Iterable[str]) -> list[TopicSpec]:
    """Load a topics JSONL file (or iterable of lines)."""
    topics: list[TopicSpec] = []
    seen: set[str] = set()
    for line_no, obj in _iter_jsonl(source, "topics"):
        topic_id = obj.get("topic_id")
        query = obj.get("query")
        if not isinstance(topic_id, str) or not topic_id:
            raise DataError(f"topics line {line_no}: missing topic_id")
        if not isinstance(query, str) or not query.strip():
            raise DataError(f"topics line {line_no}: missing query")
        if topic_id in seen:
            raise DataError(f"topics line {line_no}: duplicate topic_id {topic_id!r}")
        seen.add(topic_id)
        topics.append(
            TopicSpec(
                topic_id=topic_id,
                description=str(obj.get("description") or ""),
                query=query,
            )
        )
    return topics


def load_gold_sets(source: str | Path | Iterable[str]) -> list[GoldSet]:
    """Load a gold JSONL file, grouping rows by topic_id.

    Rows whose names collide after normalization are merged: the rating
    keeps the maximum and ``explicit`` is OR-ed, so the uniqueness
    invariant holds without dropping interview signal.
    """
    by_topic: dict[str, dict[NormalizedName, GoldAuthor]] = {}
    for line_no, obj in _iter_jsonl(source, "gold"):
        topic_id = obj.get("topic_id")
        raw_name = obj.get("author")
        if not isinstance(topic_id, str) or not topic_id:
            raise DataError(f"gold line {line_no}: missing topic_id")
        if not isinstance(raw_name, str) or not raw_name.strip():
            raise DataError(f"gold line {line_no}: missing author")

        rating = obj.get("rating")
        if rating is not None:
            if not isinstance(rating, int) or isinstance(rating, bool) or not 1 <= rating <= 10:
                raise DataError(
                    f"gold line {line_no}: rating must be an integer in 1..10, got {rating!r}"
                )
        explicit = bool(obj.get("explicit", False))

        name = normalize_author_name(raw_name)
        entry = GoldAuthor(raw_name=raw_name.strip(), name=name, rating=rating, explicit=explicit)
        authors = by_topic.setdefault(topic_id, {})
        previous = authors.get(name)
        if previous is not None:
            merged_rating = max(
                (r for r in (previous.rating, rating) if r is not None), default=None
            )
            entry = GoldAuthor(
                raw_name=previous.raw_name,
                name=name,
                rating=merged_rating,
                explicit=previous.explicit or explicit,
            )
        authors[name] = entry

    return [
        GoldSet(topic_id=topic_id, authors=list(authors.values()))
        for topic_id, authors in by_topic.items()
    ]


def _iter_jsonl(source: str | Path | Iterable[str], label: str):
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            yield from _iter_lines(fh, label)
    else:
        yield from _iter_lines(source, label)


def _iter_lines(lines: Iterable[str], label: str):
    for line_no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"{label} line {line_no}: not valid JSON ({exc})")
        if not isinstance(obj, dict):
            raise DataError(f"{label} line {line_no}: not a JSON object")
        yield line_no, obj
