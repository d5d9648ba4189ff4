"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"


class CorpusCreateRequest(BaseModel):
    """Load a corpus into the service, either from inline JSONL records or
    from a file path visible to the server."""

    name: str = Field(min_length=1)
    records: list[dict] | None = None
    path: str | None = None
    strict: bool = False


class IngestReportModel(BaseModel):
    records_accepted: int
    records_rejected: int
    warnings: list[tuple[int, str]]
    rejections: list[tuple[int, str]]
    unknown_keys: int


class CorpusStatsModel(BaseModel):
    monographs: int
    fulltext_articles: int
    abstracts: int
    total_docs: int
    distinct_authors: int
    internal_edges: int
    external_edges: int


class CorpusCreateResponse(BaseModel):
    name: str
    report: IngestReportModel
    stats: CorpusStatsModel


class CorpusInfoResponse(BaseModel):
    name: str
    stats: CorpusStatsModel
    index_built: bool


class CorpusListResponse(BaseModel):
    corpora: list[str]


class IndexBuildRequest(BaseModel):
    boosts: dict[str, float] | None = None
    threads: int = 1


class IndexBuildResponse(BaseModel):
    name: str
    n_docs: int
    boosts: dict[str, float]


class SearchRequest(BaseModel):
    query: str
    k: int | None = Field(default=None, ge=1)


class ScoredDocModel(BaseModel):
    rank: int
    doc_id: str
    score: float


class SearchResponse(BaseModel):
    total: int
    hits: list[ScoredDocModel]


class FacetsRequest(BaseModel):
    query: str
    dimension: str = "author"


class FacetModel(BaseModel):
    entity: str
    count: int


class FacetsResponse(BaseModel):
    dimension: str
    facets: list[FacetModel]


class SimilarAuthorsRequest(BaseModel):
    author: str
    mode: str = "coupling"
    limit: int | None = Field(default=None, ge=1)


class AuthorSimilarityModel(BaseModel):
    author: str
    strength: int
    mode: str


class SimilarAuthorsResponse(BaseModel):
    target: str
    similar: list[AuthorSimilarityModel]


class RankRequest(BaseModel):
    query: str
    mode: str
    seeds: list[str] | None = None
    k: int | None = Field(default=None, ge=1)


class RankedDocModel(BaseModel):
    rank: int
    doc_id: str
    score: float
    original_rank: int


class RankResponse(BaseModel):
    mode: str
    hits: list[RankedDocModel]


class BradfordZonesRequest(BaseModel):
    query: str | None = None
    zones: int = Field(default=3, ge=1)


class ZoneEntryModel(BaseModel):
    journal: str
    articles: int
    zone: int


class BradfordZonesResponse(BaseModel):
    zones_requested: int
    entries: list[ZoneEntryModel]


class TopicModel(BaseModel):
    topic_id: str
    description: str = ""
    query: str


class GoldRowModel(BaseModel):
    topic_id: str
    author: str
    rating: int | None = Field(default=None, ge=1, le=10)
    explicit: bool = False


class EvaluateRequest(BaseModel):
    topics: list[TopicModel]
    gold: list[GoldRowModel]
    k: int = Field(default=50, ge=1)
    ranker: str = "tfidf"
    seeds: list[str] | None = None


class CoverageRowModel(BaseModel):
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


class UniqueImportantAuthorsModel(BaseModel):
    named: int
    matched_in_corpus: int
    percent: float | None


class EvaluateResponse(BaseModel):
    k: int
    rows: list[CoverageRowModel]
    averages: dict[str, float]
    unique_important_authors: UniqueImportantAuthorsModel | None = None
