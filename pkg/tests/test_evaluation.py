from __future__ import annotations

import random
from decimal import Decimal

import pytest

from bibliorank.corpus import NormalizedName, build_citation_graph
from bibliorank.errors import DataError
from bibliorank.evaluation import (
    COLUMNS,
    CoverageRow,
    coverage_percent,
    coverage_report,
    coverage_row,
    match_author,
    match_report,
    render_report_tsv,
)
from bibliorank.textindex import build_index
from bibliorank.topics import GoldAuthor, GoldSet, TopicSpec

from conftest import make_corpus


def _gold(raw, rating=None, explicit=False):
    from bibliorank.corpus import normalize_author_name

    return GoldAuthor(raw_name=raw, name=normalize_author_name(raw), rating=rating, explicit=explicit)


# The ten published coverage rows used as a rendering/averaging fixture.
TABLE_ROWS = [
    ("sci001", 35, 20, 7, 3, 3152, 291, 24, 3),
    ("sci002", 27, 17, 7, 0, 1700, 147, 11, 0),
    ("sci003", 20, 12, 12, 3, 94205, 142, 123, 2),
    ("sci004", 24, 17, 16, 5, 16042, 214, 134, 4),
    ("sci005", 45, 28, 24, 7, 25169, 299, 185, 12),
    ("sci006", 29, 29, 28, 13, 61132, 928, 426, 10),
    ("sci007", 18, 16, 15, 0, 80846, 283, 207, 0),
    ("sci008", 55, 34, 22, 10, 39570, 590, 116, 11),
    ("sci009", 21, 20, 18, 2, 34814, 723, 274, 1),
    ("sci010", 21, 14, 14, 3, 57368, 223, 147, 5),
]


def table_rows(k=50):
    return [CoverageRow(topic_id=t, ia_named=a, ia_in_corpus=b, ia_in_subset=c,
                        ia_in_topk=d, subset_size=e, iad_in_corpus=f,
                        iad_in_subset=g, iad_in_topk=h, k=k)
            for t, a, b, c, d, e, f, g, h in TABLE_ROWS]


# -- match_author --


def _graph_with_authors(names):
    records = [
        {"doc_id": f"D{i}", "authors": [raw], "journal": "J", "year": 1}
        for i, raw in enumerate(names)
    ]
    corpus, _ = make_corpus(records)
    return build_citation_graph(corpus)


def test_match_author_initials_prefix():
    graph = _graph_with_authors(["White, H.D.", "White, R."])
    matches = match_author(_gold("White, H.D.", rating=7), graph)
    assert matches == {NormalizedName("white", ("h", "d"))}


def test_match_author_empty_initials_wildcard():
    graph = _graph_with_authors(["White, H.D.", "White, R."])
    matches = match_author(_gold("White", rating=7), graph)
    assert matches == {
        NormalizedName("white", ("h", "d")),
        NormalizedName("white", ("r",)),
    }


def test_match_author_candidate_empty_initials_matches():
    graph = _graph_with_authors(["White"])
    assert match_author(_gold("White, H.D."), graph) == {NormalizedName("white", ())}


def test_match_author_gold_prefix_of_candidate():
    graph = _graph_with_authors(["White, H.D."])
    assert match_author(_gold("White, H."), graph) == {NormalizedName("white", ("h", "d"))}
    # the reverse is not a prefix match
    graph2 = _graph_with_authors(["White, H."])
    assert match_author(_gold("White, H.D."), graph2) == set()


def test_match_author_absent_surname():
    graph = _graph_with_authors(["White, H.D."])
    assert match_author(_gold("Griffith, B.C."), graph) == set()


# -- coverage_row on a planted fixture --


@pytest.fixture
def planted():
    """Ten docs; topic query matches D1..D4; gold author A in the top-1,
    B only further down the subset, C only outside the subset."""
    records = []
    for i in range(1, 11):
        in_subset = i <= 4
        tf = 5 - i if in_subset else 0  # D1 scores highest
        records.append(
            {
                "doc_id": f"D{i}",
                "title": " ".join(["plasma"] * tf) if in_subset else "other physics",
                "abstract": "synthetic abstract",
                "authors": {
                    1: ["Alpha, A."],
                    4: ["Beta, B."],
                    9: ["Gamma, C."],
                }.get(i, ["Filler, F."]),
                "journal": "J",
                "year": 2000,
                "references": [],
            }
        )
    corpus, _ = make_corpus(records)
    return corpus, build_index(corpus), build_citation_graph(corpus)


def test_coverage_row_planted_pools(planted):
    corpus, index, graph = planted
    topic = TopicSpec(topic_id="t1", description="", query="plasma")
    gold = GoldSet(
        topic_id="t1",
        authors=[
            _gold("Alpha, A.", rating=9),
            _gold("Beta, B.", rating=6),
            _gold("Gamma, C.", explicit=True),
        ],
    )
    row = coverage_row(corpus, index, graph, topic, gold, k=1)
    assert (row.ia_named, row.ia_in_corpus, row.ia_in_subset, row.ia_in_topk) == (3, 3, 2, 1)
    assert row.subset_size == 4
    assert (row.iad_in_corpus, row.iad_in_subset, row.iad_in_topk) == (3, 2, 1)


def test_coverage_row_zero_important_authors(planted):
    corpus, index, graph = planted
    topic = TopicSpec(topic_id="t1", description="", query="plasma")
    gold = GoldSet(topic_id="t1", authors=[_gold("Alpha, A.", rating=3)])
    row = coverage_row(corpus, index, graph, topic, gold, k=5)
    assert row.values() == (0, 0, 0, 0, 4, 0, 0, 0)


def test_coverage_row_k_at_least_subset_collapses_pools(planted):
    corpus, index, graph = planted
    topic = TopicSpec(topic_id="t1", description="", query="plasma")
    gold = GoldSet(topic_id="t1", authors=[_gold("Alpha, A.", rating=9), _gold("Beta, B.", rating=8)])
    row = coverage_row(corpus, index, graph, topic, gold, k=50)
    assert row.ia_in_topk == row.ia_in_subset
    assert row.iad_in_topk == row.iad_in_subset


def test_coverage_row_topic_gold_mismatch(planted):
    corpus, index, graph = planted
    topic = TopicSpec(topic_id="t1", description="", query="plasma")
    gold = GoldSet(topic_id="t2", authors=[])
    with pytest.raises(DataError):
        coverage_row(corpus, index, graph, topic, gold)


@pytest.mark.parametrize("ranker", ["tfidf", "bradford", "coupling", "cocitation"])
def test_coverage_row_rankers_share_pool_chain(planted, ranker):
    corpus, index, graph = planted
    topic = TopicSpec(topic_id="t1", description="", query="plasma")
    gold = GoldSet(
        topic_id="t1",
        authors=[_gold("Alpha, A.", rating=9), _gold("Beta, B.", rating=6)],
    )
    row = coverage_row(corpus, index, graph, topic, gold, k=2, ranker=ranker)
    assert row.ia_in_topk <= row.ia_in_subset <= row.ia_in_corpus <= row.ia_named
    assert row.iad_in_topk <= row.iad_in_subset <= row.iad_in_corpus
    assert row.subset_size == 4


def test_pool_nesting_on_random_draws():
    rng = random.Random(17)
    vocab = ["flux", "lattice", "plasma", "proton", "quark", "vortex"]
    surnames = ["adams", "brown", "curie", "dirac", "euler", "fermi"]
    records = []
    for i in range(60):
        records.append(
            {
                "doc_id": f"D{i:02d}",
                "title": " ".join(rng.choices(vocab, k=4)),
                "abstract": " ".join(rng.choices(vocab, k=8)),
                "authors": [f"{rng.choice(surnames).capitalize()}, {rng.choice('abc').upper()}."],
                "journal": rng.choice(["J1", "J2", None]),
                "year": 2000,
                "references": [f"D{rng.randrange(60):02d}" for _ in range(rng.randrange(4))],
            }
        )
    corpus, _ = make_corpus(records)
    index = build_index(corpus)
    graph = build_citation_graph(corpus)
    for draw in range(25):
        terms = rng.sample(vocab, rng.randint(1, 3))
        query = " ".join(terms) if rng.random() < 0.7 else " OR ".join(terms)
        topic = TopicSpec(topic_id=f"t{draw}", description="", query=query)
        authors = [
            _gold(
                f"{rng.choice(surnames + ['ghost'])}, {rng.choice('abc')}.",
                rating=rng.randint(1, 10) if rng.random() < 0.8 else None,
                explicit=rng.random() < 0.3,
            )
        ]
        gold = GoldSet(topic_id=f"t{draw}", authors=authors)
        row = coverage_row(corpus, index, graph, topic, gold, k=rng.choice([1, 3, 10, 100]))
        assert row.ia_in_topk <= row.ia_in_subset <= row.ia_in_corpus <= row.ia_named
        assert row.iad_in_topk <= row.iad_in_subset <= row.iad_in_corpus
        assert row.iad_in_topk <= row.k
        assert row.iad_in_subset <= row.subset_size


# -- coverage_report --


def test_table_fixture_averages():
    report = coverage_report(table_rows())
    assert report.averages == {
        "ia_named": Decimal("29.5"),
        "ia_in_corpus": Decimal("20.7"),
        "ia_in_subset": Decimal("16.3"),
        "ia_in_topk": Decimal("4.6"),  # recomputed; the published table prints 4.8
        "subset_size": Decimal("41399.8"),
        "iad_in_corpus": Decimal("384.0"),
        "iad_in_subset": Decimal("164.7"),
        "iad_in_topk": Decimal("4.8"),
    }


def test_single_row_averages_equal_row():
    rows = table_rows()[:1]
    report = coverage_report(rows)
    for column in COLUMNS:
        assert report.averages[column] == Decimal(getattr(rows[0], column)).quantize(Decimal("0.1"))


def test_two_identical_rows_average_to_the_row():
    rows = [table_rows()[2], table_rows()[2]]
    report = coverage_report(rows)
    for column in COLUMNS:
        assert float(report.averages[column]) == float(getattr(rows[0], column))


def test_averages_times_rows_equal_sums():
    rows = table_rows()
    report = coverage_report(rows)
    for column in COLUMNS:
        total = sum(getattr(row, column) for row in rows)
        unrounded = Decimal(total) / Decimal(len(rows))
        assert report.averages[column] == unrounded.quantize(Decimal("0.1"))


def test_coverage_report_errors():
    with pytest.raises(DataError):
        coverage_report([])
    rows = table_rows()[:2]
    rows[1] = CoverageRow(**{**vars(rows[1]), "k": 10})
    with pytest.raises(DataError):
        coverage_report(rows)


def test_row_invariant_validation():
    with pytest.raises(DataError):
        CoverageRow(topic_id="bad", ia_named=1, ia_in_corpus=2, ia_in_subset=0,
                    ia_in_topk=0, subset_size=10, iad_in_corpus=0, iad_in_subset=0,
                    iad_in_topk=0, k=50)


def test_rounding_is_half_up():
    # mean 4.65 must round to 4.7, not banker's 4.6
    row = lambda t, v: CoverageRow(topic_id=t, ia_named=v, ia_in_corpus=0, ia_in_subset=0,
                                   ia_in_topk=0, subset_size=0, iad_in_corpus=0,
                                   iad_in_subset=0, iad_in_topk=0, k=50)
    report = coverage_report([row("a", 4), row("b", 5)])
    assert report.averages["ia_named"] == Decimal("4.5")
    report = coverage_report([row("a", 1), row("b", 2), row("c", 2), row("d", 4)])
    # mean 9/4 = 2.25 -> 2.3 half-up
    assert report.averages["ia_named"] == Decimal("2.3")


# -- coverage_percent --


def test_coverage_percent_examples():
    assert coverage_percent(199, 287) == 69.3
    assert coverage_percent(0, 12) == 0.0
    assert coverage_percent(29, 29) == 100.0


def test_coverage_percent_errors():
    with pytest.raises(DataError):
        coverage_percent(1, 0)
    with pytest.raises(DataError):
        coverage_percent(5, 3)


# -- unique-IA summary and rendering --


def test_unique_ia_summary_dedupes_across_topics():
    graph = _graph_with_authors(["White, H.D.", "Kim, A."])
    gold_sets = [
        GoldSet("t1", [_gold("White, H.D.", rating=8), _gold("Ghost, G.", rating=9)]),
        GoldSet("t2", [_gold("H. D. White", rating=6), _gold("Kim, A.", rating=2)]),
    ]
    rows = [
        CoverageRow(topic_id=t, ia_named=2, ia_in_corpus=1, ia_in_subset=0, ia_in_topk=0,
                    subset_size=0, iad_in_corpus=1, iad_in_subset=0, iad_in_topk=0, k=50)
        for t in ("t1", "t2")
    ]
    report = coverage_report(rows, gold_sets=gold_sets, graph=graph)
    # white deduped across topics; kim is not important (rating 2, not explicit)
    assert report.unique_ia_named == 2
    assert report.unique_ia_matched == 1
    assert report.unique_ia_percent == 50.0


def test_render_tsv_has_table_column_order_and_avg_row():
    text = render_report_tsv(coverage_report(table_rows()))
    lines = text.strip().split("\n")
    assert lines[0].split("\t") == ["topic", *COLUMNS]
    assert lines[1].split("\t") == ["sci001", "35", "20", "7", "3", "3152", "291", "24", "3"]
    assert lines[-1].split("\t") == [
        "avg.", "29.5", "20.7", "16.3", "4.6", "41399.8", "384.0", "164.7", "4.8"
    ]


def test_match_report_audits_candidates():
    graph = _graph_with_authors(["White, H.D.", "White, R.", "Kim, A."])
    gold_sets = [GoldSet("t1", [_gold("White", rating=8)])]
    audit = match_report(gold_sets, graph)
    assert audit == [
        {
            "topic_id": "t1",
            "author": "White",
            "normalized": "white",
            "candidates": 2,
            "matched_keys": ["white, h. d.", "white, r."],
        }
    ]
