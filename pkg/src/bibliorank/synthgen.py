"""Seeded synthetic scholarly corpora with known coverage ground truth.

The generator emits the exact corpus/topics/gold JSONL formats used by the
rest of the toolkit, plus a ``truth.json`` recording, per planted topic,
the gold authors, their document placements, and the coverage row the
evaluation pipeline must reproduce.

Structure of a generated corpus:

* author productivity follows Lotka's law: the number of authors with n
  papers is round(c1 * n^-alpha), with c1 calibrated to the requested
  author count; every document gets at least one author, so when the
  Lotka slot total falls short of n_docs all productivities are scaled
  up by a common factor (which preserves the power-law exponent);
* journals split into Bradford zones (zone z holds m^(z-1) journals) and
  each zone receives an equal share of documents;
* references prefer already-cited documents (rich-get-richer), with a
  fraction pointing at external keys outside the corpus;
* per planted topic, three marker terms appear in exactly the planted
  subset documents, so the topic query retrieves precisely that subset;
  the planted subset is kept smaller than the default k=50 whenever
  0.06 * n_docs allows, which pins top-k coverage to subset coverage;
* each planted topic carries a seed author whose documents cite a
  reserved reference pool shared only with the gold subset documents,
  giving coupling/co-citation re-rankers a real, known signal.

Generation is single-threaded over one numpy PCG64 stream; identical
params give byte-identical output files.
"""

from __future__ import annotations

import heapq
import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError
from .stopwords import STOP_WORDS
from .textindex import tokenize

RNG_ALGORITHM = "numpy-pcg64"
TRUTH_FORMAT = "bibliorank-synth-truth"
TRUTH_VERSION = 1
DEFAULT_K = 50

_MARKERS_PER_TOPIC = 3


@dataclass(frozen=True)
class SynthParams:
    """Knobs for one synthetic corpus."""

    seed: int
    n_docs: int = 500
    n_authors: int = 120
    lotka_alpha: float = 2.0
    n_journals: int = 13
    bradford_m: int = 3
    zones: int = 3
    refs_per_doc: float = 8.0
    vocabulary: int = 400
    planted_topics: int = 3

    def validate(self) -> None:
        if self.n_docs < 1 or self.n_authors < 1 or self.n_journals < 1:
            raise DataError("n_docs, n_authors and n_journals must be positive")
        if self.lotka_alpha <= 1:
            raise DataError(f"lotka_alpha must be > 1, got {self.lotka_alpha}")
        if self.bradford_m < 2:
            raise DataError(f"bradford_m must be >= 2, got {self.bradford_m}")
        if self.zones < 1:
            raise DataError(f"zones must be >= 1, got {self.zones}")
        if self.refs_per_doc < 0:
            raise DataError("refs_per_doc must be non-negative")
        if self.planted_topics < 0:
            raise DataError("planted_topics must be >= 0")
        if self.vocabulary < 3 * self.planted_topics + 30:
            raise DataError("vocabulary too small for the planted topics")
        if self.planted_topics and self.n_docs < 60 * self.planted_topics:
            raise DataError("n_docs too small for the planted topics")


PROFILES: dict[str, dict] = {
    "small": {"n_docs": 120, "n_authors": 40, "planted_topics": 2, "vocabulary": 200},
    "default": {},
    "distcheck": {
        "n_docs": 10_000,
        "n_authors": 10_000,
        "planted_topics": 0,
        "refs_per_doc": 6.0,
    },
    "rerank": {"n_docs": 1_200, "n_authors": 260, "planted_topics": 1},
}


def params_for_profile(profile: str, seed: int, **overrides) -> SynthParams:
    if profile not in PROFILES:
        raise DataError(
            f"unknown profile {profile!r}; available: {', '.join(sorted(PROFILES))}"
        )
    kwargs = dict(PROFILES[profile])
    kwargs.update(overrides)
    params = SynthParams(seed=seed, **kwargs)
    params.validate()
    return params


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def lotka_counts(alpha: float, c1: int) -> list[tuple[int, int]]:
    """Author counts per productivity level: round(c1 * n^-alpha), stopping
    at the first level that rounds to zero."""
    if alpha <= 1:
        raise DataError(f"alpha must be > 1, got {alpha}")
    if c1 < 1:
        raise DataError(f"c1 must be >= 1, got {c1}")
    counts: list[tuple[int, int]] = []
    n = 1
    while True:
        count = _round_half_up(c1 * n**-alpha)
        if count == 0:
            break
        counts.append((n, count))
        n += 1
    return counts


def _calibrate_c1(alpha: float, n_authors: int) -> int:
    """Smallest c1 whose Lotka table totals at least n_authors authors."""

    def total(c1: int) -> int:
        return sum(count for _, count in lotka_counts(alpha, c1))

    high = 1
    while total(high) < n_authors:
        high *= 2
    low = max(1, high // 2)
    while low < high:
        mid = (low + high) // 2
        if total(mid) >= n_authors:
            high = mid
        else:
            low = mid + 1
    return high


def bradford_assign(n_journals: int, m: int, zones: int) -> list[tuple[str, int, int, float]]:
    """Assign journals to Bradford zones with per-journal document weights.

    Zone z (1 = core) holds m^(z-1) journals; surplus journals join the
    outermost zone and missing ones collapse zones from the tail.  Weights
    give every zone an equal share of documents, split evenly inside the
    zone.  Returns (journal, index, zone, weight) tuples, core first.
    """
    if n_journals < 1:
        raise DataError("n_journals must be >= 1")
    if m < 2:
        raise DataError(f"m must be >= 2, got {m}")
    if zones < 1:
        raise DataError(f"zones must be >= 1, got {zones}")

    sizes: list[int] = []
    remaining = n_journals
    for z in range(1, zones + 1):
        take = min(m ** (z - 1), remaining)
        sizes.append(take)
        remaining -= take
        if remaining == 0:
            break
    if remaining:
        sizes[-1] += remaining

    width = len(str(n_journals))
    assignments: list[tuple[str, int, int, float]] = []
    index = 0
    for z, size in enumerate(sizes, 1):
        weight = (1.0 / len(sizes)) / size
        for _ in range(size):
            assignments.append((f"jrnl-{index + 1:0{width}d}", index, z, weight))
            index += 1
    return assignments


# -- deterministic word pools (seed-independent, frozen) --


def _word_pool(size: int) -> list[str]:
    """Synthetic vocabulary: pronounceable words whose stems are pairwise
    distinct, none of them stop words."""
    consonants = "bcdfgjklmnprstvz"
    vowels = "aeiou"
    syllables = [c + v for c in consonants for v in vowels]
    words: list[str] = []
    seen_stems: set[str] = set()
    for a, b, c in itertools.product(syllables, repeat=3):
        word = a + b + c
        if word in STOP_WORDS:
            continue
        tokens = tokenize(word)
        if len(tokens) != 1 or tokens[0] in seen_stems:
            continue
        seen_stems.add(tokens[0])
        words.append(word)
        if len(words) == size:
            return words
    raise DataError(f"cannot build a vocabulary of {size} words")


def _surname_pool(size: int) -> list[str]:
    onsets = [
        "bar", "bel", "cor", "dan", "eld", "fen", "gor", "hal", "ing", "jor",
        "kel", "lor", "mar", "nor", "orl", "per", "quin", "ros", "sten", "tor",
        "ulm", "ven", "wol", "yar", "zan",
    ]
    mids = "aeiou"
    codas = "dklnrstvz"
    names = [o + m + c for o, m, c in itertools.product(onsets, mids, codas)]
    if size > len(names):
        # double-barrel the overflow deterministically
        suffixes = ["sen", "berg", "ford", "holm", "wick", "stad", "mere", "dale", "ton", "vik"]
        names = names + [x + y for x, y in itertools.product(names, suffixes)]
    if size > len(names):
        raise DataError(f"cannot build {size} distinct surnames")
    return names[:size]


def _author_raw_name(surname: str, initial: str) -> str:
    return f"{surname.capitalize()}, {initial.upper()}."


def _author_alt_name(surname: str, initial: str) -> str:
    return f"{initial.upper()}. {surname.capitalize()}"


@dataclass
class _PlantedAuthor:
    surname: str
    initial: str
    rating: int | None
    explicit: bool
    important: bool
    doc_ids: list[str] = field(default_factory=list)

    def raw(self) -> str:
        return _author_raw_name(self.surname, self.initial)

    def alt(self) -> str:
        return _author_alt_name(self.surname, self.initial)


@dataclass
class SynthBundle:
    """In-memory result of one generation run."""

    params: SynthParams
    records: list[dict]
    topics: list[dict]
    gold_rows: list[dict]
    truth: dict


def _author_quotas(params: SynthParams, target_authors: int) -> list[int]:
    """Target per-author productivities, scaled so the slot total covers
    every document."""
    c1 = _calibrate_c1(params.lotka_alpha, target_authors)
    table = lotka_counts(params.lotka_alpha, c1)
    counts = [count for _, count in table]
    excess = sum(counts) - target_authors
    if excess > 0:
        counts[0] = max(1, counts[0] - excess)

    quotas: list[int] = []
    for (n, _), count in zip(table, counts):
        quotas.extend([n] * count)

    base_slots = sum(quotas)
    if base_slots < params.n_docs:
        scale = params.n_docs / base_slots
        while True:
            scaled = [min(params.n_docs, max(1, _round_half_up(scale * q))) for q in quotas]
            if sum(scaled) >= params.n_docs:
                quotas = scaled
                break
            scale *= 1.05
    return quotas


def _assign_authors(quotas: list[int], n_docs: int) -> list[list[int]]:
    """Deal each author's quota onto that many distinct documents, always
    filling the least-loaded documents first.  Deterministic."""
    heap: list[tuple[int, int]] = [(0, i) for i in range(n_docs)]
    doc_authors: list[list[int]] = [[] for _ in range(n_docs)]
    order = sorted(range(len(quotas)), key=lambda i: (-quotas[i], i))
    for author_idx in order:
        taken = [heapq.heappop(heap) for _ in range(quotas[author_idx])]
        for _, doc_idx in taken:
            doc_authors[doc_idx].append(author_idx)
        for load, doc_idx in taken:
            heapq.heappush(heap, (load + 1, doc_idx))
    return doc_authors


def _journal_slots(params: SynthParams) -> tuple[list[str], list[tuple[str, int, float]]]:
    """Exact per-journal document quotas honoring equal zone shares."""
    assignments = bradford_assign(params.n_journals, params.bradford_m, params.zones)
    zones = sorted({zone for _, _, zone, _ in assignments})
    per_zone = {z: params.n_docs // len(zones) for z in zones}
    for z in zones[: params.n_docs % len(zones)]:
        per_zone[z] += 1

    slots: list[str] = []
    journal_meta: list[tuple[str, int, float]] = []
    for z in zones:
        members = [j for j, _, zone, _ in assignments if zone == z]
        share = per_zone[z]
        base = share // len(members)
        rem = share % len(members)
        for pos, journal in enumerate(members):
            quota = base + (1 if pos < rem else 0)
            slots.extend([journal] * quota)
            journal_meta.append((journal, z, quota))
    return slots, journal_meta


def generate_corpus(params: SynthParams) -> SynthBundle:
    """Generate a corpus with planted, oracle-checkable topic/gold truth."""
    params.validate()
    rng = np.random.Generator(np.random.PCG64(params.seed))
    n_docs = params.n_docs
    id_width = max(4, len(str(n_docs)))
    doc_ids = [f"doc-{i + 1:0{id_width}d}" for i in range(n_docs)]

    # background authors (Lotka), journals (Bradford), kinds, years;
    # planted authors (8 or 9 per topic own documents) come out of the
    # author budget so the realized distinct-author count stays near
    # n_authors
    subset_size = min(max(10, _round_half_up(0.06 * n_docs)), max(1, n_docs // 3))
    planted_per_topic = (4 if subset_size > DEFAULT_K else 3) + 5
    background_target = max(
        10, params.n_authors - planted_per_topic * params.planted_topics
    )
    quotas = _author_quotas(params, background_target)
    doc_author_idx = _assign_authors(quotas, n_docs)
    surnames = _surname_pool(len(quotas) + 16 * max(1, params.planted_topics))
    initials = "abcdefghijklmnopqrstuvwxyz"
    background_names = [
        _author_raw_name(surnames[i], initials[i % 26]) for i in range(len(quotas))
    ]
    reserved_surnames = surnames[len(quotas) :]

    journal_slot_list, journal_meta = _journal_slots(params)
    journal_order = rng.permutation(n_docs)
    doc_journal = [""] * n_docs
    for slot, doc_pos in enumerate(journal_order):
        doc_journal[doc_pos] = journal_slot_list[slot]

    kind_codes = rng.choice(3, size=n_docs, p=[0.1, 0.3, 0.6])
    kind_names = ("monograph", "fulltext_article", "abstract_only")
    years = rng.integers(1985, 2012, size=n_docs)

    # vocabulary: background pool plus reserved per-topic markers
    vocab = _word_pool(params.vocabulary)
    background_words = vocab[: params.vocabulary - _MARKERS_PER_TOPIC * params.planted_topics]
    marker_words = vocab[len(background_words) :]

    def sample_words(count: int) -> list[str]:
        picks = rng.integers(0, len(background_words), size=count)
        return [background_words[i] for i in picks]

    # references: preferential attachment over earlier docs + external keys
    n_external = max(8, n_docs // 5)
    ext_width = max(4, len(str(n_external)))
    external_keys = [f"ext-{i + 1:0{ext_width}d}" for i in range(n_external)]
    attach_pool: list[int] = []
    doc_refs: list[list[str]] = []
    ref_counts = rng.poisson(params.refs_per_doc, size=n_docs)
    for i in range(n_docs):
        refs: list[str] = []
        seen: set[str] = set()
        for _ in range(int(ref_counts[i])):
            if attach_pool and rng.random() < 0.8:
                target = attach_pool[int(rng.integers(0, len(attach_pool)))]
                key = doc_ids[target]
            else:
                key = external_keys[int(rng.integers(0, n_external))]
            if key in seen:
                continue
            seen.add(key)
            refs.append(key)
            if key.startswith("doc-"):
                attach_pool.append(int(key.split("-")[1]) - 1)
        doc_refs.append(refs)
        attach_pool.append(i)

    # base text
    doc_title_words = [sample_words(8) for _ in range(n_docs)]
    doc_abstract_words = [sample_words(40) for _ in range(n_docs)]
    doc_fulltext_words = [
        sample_words(120) if kind_codes[i] == 1 else None for i in range(n_docs)
    ]

    # planted topics
    free_docs = list(range(n_docs))
    order = rng.permutation(len(free_docs))
    free_docs = [free_docs[i] for i in order]

    def take_docs(count: int) -> list[int]:
        if count > len(free_docs):
            raise DataError("not enough documents to plant topics")
        taken = free_docs[:count]
        del free_docs[:count]
        return taken

    extra_authors: dict[int, list[str]] = {}
    topics: list[dict] = []
    gold_rows: list[dict] = []
    truth_topics: list[dict] = []
    idx_of = {doc_id: i for i, doc_id in enumerate(doc_ids)}
    reserved_iter = iter(reserved_surnames)

    def next_reserved() -> str:
        try:
            return next(reserved_iter)
        except StopIteration:
            raise DataError("surname pool exhausted while planting")

    large_subsets = subset_size > DEFAULT_K  # re-ranker exercises need spill
    n_imp_subset = 4 if large_subsets else 3
    docs_per_subset_author = 3 if large_subsets else 2

    for t in range(params.planted_topics):
        topic_id = f"topic-{t + 1:03d}"
        markers = marker_words[t * _MARKERS_PER_TOPIC : (t + 1) * _MARKERS_PER_TOPIC]
        subset = take_docs(subset_size)
        subset_idx = set(subset)
        subset_hosts = list(subset)  # distinct host per planted author doc

        planted: list[_PlantedAuthor] = []
        seed_author = _PlantedAuthor(
            surname=next_reserved(), initial="s", rating=None, explicit=False, important=False
        )

        # important authors present in the subset
        for a in range(n_imp_subset):
            author = _PlantedAuthor(
                surname=next_reserved(),
                initial=initials[a % 26],
                rating=int(rng.integers(5, 11)),
                explicit=False,
                important=True,
            )
            for _ in range(docs_per_subset_author):
                host = subset_hosts.pop(0)
                author.doc_ids.append(doc_ids[host])
                extra_authors.setdefault(host, []).append(author.raw())
            outside = take_docs(1)[0]
            author.doc_ids.append(doc_ids[outside])
            extra_authors.setdefault(outside, []).append(author.raw())
            planted.append(author)

        # important authors only in the corpus (outside every subset);
        # the first is explicit-only, unrated
        for a in range(2):
            author = _PlantedAuthor(
                surname=next_reserved(),
                initial=initials[(n_imp_subset + a) % 26],
                rating=None if a == 0 else int(rng.integers(5, 11)),
                explicit=a == 0,
                important=True,
            )
            for host in take_docs(2):
                author.doc_ids.append(doc_ids[host])
                extra_authors.setdefault(host, []).append(author.raw())
            planted.append(author)

        # important author absent from the corpus (a "novice"): explicit
        # mention keeps them important despite the low rating
        planted.append(
            _PlantedAuthor(
                surname=next_reserved(),
                initial="x",
                rating=2,
                explicit=True,
                important=True,
            )
        )

        # rated-but-unimportant authors, one inside the subset, one outside
        for a, inside in enumerate((True, False)):
            author = _PlantedAuthor(
                surname=next_reserved(),
                initial=initials[(6 + a) % 26],
                rating=int(rng.integers(1, 5)),
                explicit=False,
                important=False,
            )
            host = subset_hosts.pop(0) if inside else take_docs(1)[0]
            author.doc_ids.append(doc_ids[host])
            extra_authors.setdefault(host, []).append(author.raw())
            planted.append(author)

        # seed author: documents outside the subset citing a reserved pool
        reserved_refs = [f"seedref-{topic_id}-{i + 1}" for i in range(6)]
        seed_doc_hosts = take_docs(2)
        for host in seed_doc_hosts:
            seed_author.doc_ids.append(doc_ids[host])
            extra_authors.setdefault(host, []).append(seed_author.raw())
            doc_refs[host] = list(reserved_refs)

        # gold subset documents share part of the reserved pool; citer
        # documents cite one gold document and one seed document each
        gold_subset_docs = [
            doc_id
            for author in planted
            if author.important
            for doc_id in author.doc_ids
            if idx_of[doc_id] in subset_idx
        ]
        for pos, gold_doc in enumerate(gold_subset_docs):
            host = idx_of[gold_doc]
            picks = rng.permutation(len(reserved_refs))[:3]
            for p in picks:
                if reserved_refs[p] not in doc_refs[host]:
                    doc_refs[host].append(reserved_refs[p])
            citer = take_docs(1)[0]
            seed_doc = doc_ids[seed_doc_hosts[pos % len(seed_doc_hosts)]]
            for key in (gold_doc, seed_doc):
                if key not in doc_refs[citer]:
                    doc_refs[citer].append(key)

        # markers go into title and abstract of every subset document
        for host in subset:
            doc_title_words[host] = doc_title_words[host] + [markers[0]]
            doc_abstract_words[host] = doc_abstract_words[host] + list(markers)

        query = " ".join(markers)
        description = (
            f"Synthetic research interest around {markers[0]}, "
            f"{markers[1]} and {markers[2]}."
        )
        topics.append({"topic_id": topic_id, "description": description, "query": query})

        for author in planted:
            row: dict = {"topic_id": topic_id, "author": author.alt()}
            if author.rating is not None:
                row["rating"] = author.rating
            if author.explicit:
                row["explicit"] = True
            gold_rows.append(row)

        subset_doc_ids = sorted(doc_ids[i] for i in subset)
        subset_set = set(subset_doc_ids)
        important_authors = [a for a in planted if a.important]
        iad_docs: set[str] = set()
        for a in important_authors:
            iad_docs.update(a.doc_ids)
        # top-k equals the subset when the subset fits under k, which makes
        # the coverage row exact by construction; for larger subsets the
        # top-k columns depend on the ranker and stay unspecified (None)
        fits = subset_size <= DEFAULT_K
        ia_in_subset = sum(1 for a in important_authors if set(a.doc_ids) & subset_set)
        expected_row = {
            "topic_id": topic_id,
            "ia_named": len(important_authors),
            "ia_in_corpus": sum(1 for a in important_authors if a.doc_ids),
            "ia_in_subset": ia_in_subset,
            "ia_in_topk": ia_in_subset if fits else None,
            "subset_size": subset_size,
            "iad_in_corpus": len(iad_docs),
            "iad_in_subset": len(iad_docs & subset_set),
            "iad_in_topk": len(iad_docs & subset_set) if fits else None,
            "k": DEFAULT_K,
        }
        truth_topics.append(
            {
                "topic_id": topic_id,
                "query": query,
                "markers": list(markers),
                "subset_doc_ids": subset_doc_ids,
                "seed_authors": [seed_author.raw()],
                "seed_doc_ids": sorted(doc_ids[i] for i in seed_doc_hosts),
                "gold_authors": [
                    {
                        "author": a.alt(),
                        "rating": a.rating,
                        "explicit": a.explicit,
                        "important": a.important,
                        "docs_in_corpus": sorted(a.doc_ids),
                        "docs_in_subset": sorted(set(a.doc_ids) & subset_set),
                    }
                    for a in planted
                ],
                "expected_row": expected_row,
            }
        )

    # assemble records
    records: list[dict] = []
    for i in range(n_docs):
        authors = [background_names[a] for a in doc_author_idx[i]]
        authors.extend(extra_authors.get(i, []))
        kind = kind_names[kind_codes[i]]
        record: dict = {
            "doc_id": doc_ids[i],
            "kind": kind,
            "title": " ".join(doc_title_words[i]),
            "abstract": " ".join(doc_abstract_words[i]),
            "authors": authors,
            "journal": doc_journal[i],
            "year": int(years[i]),
            "references": doc_refs[i],
        }
        if kind == "fulltext_article":
            record["fulltext"] = " ".join(doc_fulltext_words[i])
        records.append(record)

    truth = {
        "format": TRUTH_FORMAT,
        "version": TRUTH_VERSION,
        "rng": RNG_ALGORITHM,
        "numpy_version": np.__version__,
        "params": asdict(params),
        "k": DEFAULT_K,
        "journals": [
            {"journal": j, "zone": z, "doc_quota": q} for j, z, q in journal_meta
        ],
        "topics": truth_topics,
    }
    return SynthBundle(
        params=params, records=records, topics=topics, gold_rows=gold_rows, truth=truth
    )


def write_bundle(bundle: SynthBundle, out_dir: str | Path) -> dict[str, Path]:
    """Write corpus.jsonl / topics.jsonl / gold.jsonl / truth.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "corpus": out / "corpus.jsonl",
        "topics": out / "topics.jsonl",
        "gold": out / "gold.jsonl",
        "truth": out / "truth.json",
    }
    _write_jsonl(paths["corpus"], bundle.records)
    _write_jsonl(paths["topics"], bundle.topics)
    _write_jsonl(paths["gold"], bundle.gold_rows)
    paths["truth"].write_text(
        json.dumps(bundle.truth, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return paths


def _write_jsonl(path: Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
