"""FastAPI application exposing the toolkit over HTTP.

Corpora are loaded into named in-memory workspaces; the built corpus,
graph and index are immutable, so every read endpoint is safe under
concurrent requests.  Run with::

    uvicorn bibliorank.service.app:app
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException

from .. import evaluation, facets, informetrics, textindex
from ..corpus import (
    CitationGraph,
    Corpus,
    IngestReport,
    build_citation_graph,
    corpus_stats,
    ingest_records,
    normalize_author_name,
)
from ..errors import DataError, UnknownAuthorError, UnknownDocumentError
from ..topics import GoldSet, TopicSpec, load_gold_sets
from . import schemas


@dataclass
class Workspace:
    corpus: Corpus
    report: IngestReport
    graph: CitationGraph
    index: textindex.Index | None = None


class Registry:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._workspaces: dict[str, Workspace] = {}

    def create(self, name: str, workspace: Workspace) -> None:
        with self._lock:
            if name in self._workspaces:
                raise HTTPException(status_code=409, detail=f"corpus {name!r} already exists")
            self._workspaces[name] = workspace

    def get(self, name: str) -> Workspace:
        workspace = self._workspaces.get(name)
        if workspace is None:
            raise HTTPException(status_code=404, detail=f"no corpus named {name!r}")
        return workspace

    def drop(self, name: str) -> None:
        with self._lock:
            if name not in self._workspaces:
                raise HTTPException(status_code=404, detail=f"no corpus named {name!r}")
            del self._workspaces[name]

    def names(self) -> list[str]:
        return sorted(self._workspaces)


def _stats_model(workspace: Workspace) -> schemas.CorpusStatsModel:
    stats = corpus_stats(workspace.corpus, workspace.graph)
    return schemas.CorpusStatsModel(**stats.to_dict())


def _indexed(workspace: Workspace) -> textindex.Index:
    if workspace.index is None:
        raise HTTPException(status_code=409, detail="index not built; POST .../index first")
    return workspace.index


def create_app() -> FastAPI:
    app = FastAPI(
        title="bibliorank",
        description="Informetric retrieval service: search, facets, citation-based "
        "re-ranking and important-author coverage evaluation.",
        version="0.1.0",
    )
    registry = Registry()

    @app.exception_handler(DataError)
    async def _data_error(request, exc: DataError):
        from fastapi.responses import JSONResponse

        status = 404 if isinstance(exc, (UnknownDocumentError, UnknownAuthorError)) else 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse()

    @app.get("/corpora", response_model=schemas.CorpusListResponse)
    def list_corpora() -> schemas.CorpusListResponse:
        return schemas.CorpusListResponse(corpora=registry.names())

    @app.post("/corpora", response_model=schemas.CorpusCreateResponse, status_code=201)
    def create_corpus(request: schemas.CorpusCreateRequest) -> schemas.CorpusCreateResponse:
        if (request.records is None) == (request.path is None):
            raise HTTPException(
                status_code=422, detail="provide exactly one of records or path"
            )
        if request.records is not None:
            lines = [json.dumps(record) for record in request.records]
            corpus, report = ingest_records(lines, strict=request.strict)
        else:
            path = Path(request.path)
            if not path.is_file():
                raise HTTPException(status_code=400, detail=f"corpus file not found: {path}")
            with open(path, encoding="utf-8") as fh:
                corpus, report = ingest_records(fh, strict=request.strict)
        workspace = Workspace(corpus=corpus, report=report, graph=build_citation_graph(corpus))
        registry.create(request.name, workspace)
        return schemas.CorpusCreateResponse(
            name=request.name,
            report=schemas.IngestReportModel(**report.to_dict()),
            stats=_stats_model(workspace),
        )

    @app.get("/corpora/{name}", response_model=schemas.CorpusInfoResponse)
    def corpus_info(name: str) -> schemas.CorpusInfoResponse:
        workspace = registry.get(name)
        return schemas.CorpusInfoResponse(
            name=name, stats=_stats_model(workspace), index_built=workspace.index is not None
        )

    @app.delete("/corpora/{name}", status_code=204)
    def delete_corpus(name: str) -> None:
        registry.drop(name)

    @app.post("/corpora/{name}/index", response_model=schemas.IndexBuildResponse)
    def build_index_endpoint(
        name: str, request: schemas.IndexBuildRequest
    ) -> schemas.IndexBuildResponse:
        workspace = registry.get(name)
        index = textindex.build_index(
            workspace.corpus, boosts=request.boosts, threads=max(1, request.threads)
        )
        workspace.index = index
        return schemas.IndexBuildResponse(name=name, n_docs=index.n_docs, boosts=index.boosts)

    @app.post("/corpora/{name}/search", response_model=schemas.SearchResponse)
    def search_endpoint(name: str, request: schemas.SearchRequest) -> schemas.SearchResponse:
        workspace = registry.get(name)
        hits = textindex.search(_indexed(workspace), request.query, k=request.k)
        return schemas.SearchResponse(
            total=len(hits),
            hits=[
                schemas.ScoredDocModel(rank=h.rank, doc_id=h.doc_id, score=h.score)
                for h in hits
            ],
        )

    @app.post("/corpora/{name}/facets", response_model=schemas.FacetsResponse)
    def facets_endpoint(name: str, request: schemas.FacetsRequest) -> schemas.FacetsResponse:
        workspace = registry.get(name)
        subset = textindex.topic_subset(_indexed(workspace), request.query)
        counts = facets.facet_counts(workspace.corpus, subset, request.dimension)
        return schemas.FacetsResponse(
            dimension=request.dimension,
            facets=[schemas.FacetModel(entity=fc.rendered(), count=fc.count) for fc in counts],
        )

    @app.post("/corpora/{name}/similar-authors", response_model=schemas.SimilarAuthorsResponse)
    def similar_authors_endpoint(
        name: str, request: schemas.SimilarAuthorsRequest
    ) -> schemas.SimilarAuthorsResponse:
        workspace = registry.get(name)
        target = normalize_author_name(request.author)
        similar = informetrics.rank_similar_authors(
            workspace.graph, target, mode=request.mode, limit=request.limit
        )
        return schemas.SimilarAuthorsResponse(
            target=target.render(),
            similar=[
                schemas.AuthorSimilarityModel(
                    author=s.author.render(), strength=s.strength, mode=s.mode
                )
                for s in similar
            ],
        )

    @app.post("/corpora/{name}/rank", response_model=schemas.RankResponse)
    def rank_endpoint(name: str, request: schemas.RankRequest) -> schemas.RankResponse:
        workspace = registry.get(name)
        baseline = textindex.search(_indexed(workspace), request.query)
        original_ranks = {doc.doc_id: doc.rank for doc in baseline}
        if request.mode == "bradford":
            reranked = informetrics.bradfordize_rerank(workspace.corpus, baseline)
        elif request.mode in informetrics.MODES:
            if not request.seeds:
                raise HTTPException(
                    status_code=422, detail=f"mode {request.mode!r} needs seed authors"
                )
            seeds = [normalize_author_name(raw) for raw in request.seeds]
            reranked = informetrics.informetric_rerank(
                workspace.graph, baseline, seeds, mode=request.mode
            )
        else:
            raise HTTPException(status_code=422, detail=f"unknown mode {request.mode!r}")
        if request.k is not None:
            reranked = reranked[: request.k]
        return schemas.RankResponse(
            mode=request.mode,
            hits=[
                schemas.RankedDocModel(
                    rank=doc.rank,
                    doc_id=doc.doc_id,
                    score=doc.score,
                    original_rank=original_ranks[doc.doc_id],
                )
                for doc in reranked
            ],
        )

    @app.post("/corpora/{name}/bradford-zones", response_model=schemas.BradfordZonesResponse)
    def zones_endpoint(
        name: str, request: schemas.BradfordZonesRequest
    ) -> schemas.BradfordZonesResponse:
        workspace = registry.get(name)
        if request.query is None:
            result = set(workspace.corpus.doc_ids())
        else:
            result = textindex.topic_subset(_indexed(workspace), request.query)
        counts = facets.facet_counts(workspace.corpus, result, "journal")
        zones = informetrics.bradford_zones(counts, request.zones)
        return schemas.BradfordZonesResponse(
            zones_requested=zones.zones_requested,
            entries=[
                schemas.ZoneEntryModel(journal=j, articles=c, zone=z)
                for j, c, z in zones.entries
            ],
        )

    @app.post("/corpora/{name}/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate_endpoint(
        name: str, request: schemas.EvaluateRequest
    ) -> schemas.EvaluateResponse:
        workspace = registry.get(name)
        index = _indexed(workspace)
        gold_lines = [
            json.dumps(row.model_dump(exclude_none=True)) for row in request.gold
        ]
        gold_sets = {g.topic_id: g for g in load_gold_sets(gold_lines)}
        seeds = (
            [normalize_author_name(raw) for raw in request.seeds]
            if request.seeds
            else None
        )
        rows = [
            evaluation.coverage_row(
                workspace.corpus,
                index,
                workspace.graph,
                TopicSpec(topic_id=t.topic_id, description=t.description, query=t.query),
                gold_sets.get(t.topic_id, GoldSet(topic_id=t.topic_id)),
                k=request.k,
                ranker=request.ranker,
                seeds=seeds,
            )
            for t in request.topics
        ]
        report = evaluation.coverage_report(
            rows, gold_sets=list(gold_sets.values()), graph=workspace.graph
        )
        payload = evaluation.report_to_dict(report)
        unique = payload.get("unique_important_authors")
        return schemas.EvaluateResponse(
            k=report.k,
            rows=[schemas.CoverageRowModel(**vars(row)) for row in report.rows],
            averages=payload["averages"],
            unique_important_authors=(
                schemas.UniqueImportantAuthorsModel(**unique) if unique else None
            ),
        )

    return app


app = create_app()
