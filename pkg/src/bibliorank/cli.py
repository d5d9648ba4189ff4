"""Command-line entry point: ingest, index, search, facets, rank, eval, synth.

A thin shell over the library: every subcommand parses flags, calls the
corresponding module operations and renders their output, so CLI results
are byte-identical to direct library calls.  Exit codes: 0 success,
1 usage error, 2 data error (bad input file, malformed query, ...).

An optional --config JSON file supplies defaults using the same keys as
the long flag names (dashes as underscores); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evaluation, facets, informetrics, synthgen, textindex
from .corpus import build_citation_graph, corpus_stats, load_corpus, normalize_author_name
from .errors import BiblioRankError, DataError, UsageError
from .topics import GoldSet, load_gold_sets, load_topics


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2; usage errors are 1
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(
        prog="bibliorank",
        description="Informetric retrieval toolkit: index scholarly corpora, "
        "retrieve topical subsets, aggregate facets, re-rank by citation "
        "signals and evaluate important-author coverage.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands: dict[str, _Parser] = {}

    def add_command(name: str, help_text: str, printable: bool = True) -> _Parser:
        sub = subparsers.add_parser(
            name,
            help=help_text,
            description=help_text,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        sub.add_argument("--config", help="JSON file with flag defaults")
        if printable:
            sub.add_argument("--out", help="write output to this file instead of stdout")
            sub.add_argument(
                "--format", choices=("tsv", "json"), default="tsv", help="output format"
            )
        commands[name] = sub
        return sub

    sub = add_command("ingest", "validate a corpus file and report ingestion stats")
    sub.add_argument("--corpus", required=True, help="corpus JSONL file")
    sub.add_argument("--strict", action="store_true", help="reject records with warnings")
    sub.set_defaults(func=cmd_ingest)

    sub = add_command("index", "build and store an inverted index", printable=False)
    sub.add_argument("--corpus", required=True, help="corpus JSONL file")
    sub.add_argument("--out", required=True, help="index file to write")
    sub.add_argument("--boost-title", type=float, default=3.0, help="title field boost")
    sub.add_argument("--boost-abstract", type=float, default=2.0, help="abstract field boost")
    sub.add_argument("--boost-fulltext", type=float, default=1.0, help="fulltext field boost")
    sub.add_argument("--threads", type=int, default=1, help="tokenization worker threads")
    sub.set_defaults(func=cmd_index)

    sub = add_command("search", "run a query and print the TF-IDF ranking")
    sub.add_argument("--query", required=True, help="query string (groups joined by OR)")
    sub.add_argument("--index", help="stored index file")
    sub.add_argument("--corpus", help="corpus JSONL (indexed in memory if no --index)")
    sub.add_argument("--k", type=int, default=None, help="cap on the number of hits")
    sub.add_argument("--threads", type=int, default=1, help="tokenization worker threads")
    sub.set_defaults(func=cmd_search)

    sub = add_command("facets", "aggregate author or journal facets over a query result")
    sub.add_argument("--corpus", required=True, help="corpus JSONL file")
    sub.add_argument("--query", required=True, help="query string")
    sub.add_argument(
        "--dimension", choices=facets.DIMENSIONS, default="author", help="facet dimension"
    )
    sub.add_argument(
        "--zones",
        type=int,
        default=None,
        help="with --dimension journal: also assign Bradford zones",
    )
    sub.add_argument("--index", help="stored index file")
    sub.add_argument("--threads", type=int, default=1, help="tokenization worker threads")
    sub.set_defaults(func=cmd_facets)

    sub = add_command(
        "rank",
        "re-rank a query result by journal or citation signals, or list "
        "authors similar to --similar-to",
    )
    sub.add_argument("--corpus", required=True, help="corpus JSONL file")
    sub.add_argument("--query", help="query string (document re-ranking)")
    sub.add_argument(
        "--mode",
        choices=("bradford", "coupling", "cocitation"),
        required=True,
        help="re-ranking or similarity mode",
    )
    sub.add_argument("--seeds", help="file with one seed author name per line")
    sub.add_argument(
        "--similar-to", help="author name: list similar authors instead of re-ranking"
    )
    sub.add_argument("--index", help="stored index file")
    sub.add_argument("--k", type=int, default=None, help="cap on the number of rows")
    sub.add_argument("--threads", type=int, default=1, help="tokenization worker threads")
    sub.set_defaults(func=cmd_rank)

    sub = add_command("eval", "compute the important-author coverage table")
    sub.add_argument("--corpus", required=True, help="corpus JSONL file")
    sub.add_argument("--topics", required=True, help="topics JSONL file")
    sub.add_argument("--gold", required=True, help="gold-author JSONL file")
    sub.add_argument("--k", type=int, default=50, help="top-k pool size")
    sub.add_argument(
        "--ranker", choices=evaluation.RANKERS, default="tfidf", help="top-k ranker"
    )
    sub.add_argument("--seeds", help="seed-author file for coupling/cocitation rankers")
    sub.add_argument("--index", help="stored index file")
    sub.add_argument("--threads", type=int, default=1, help="tokenization worker threads")
    sub.set_defaults(func=cmd_eval)

    sub = add_command(
        "synth", "generate a synthetic corpus with planted ground truth", printable=False
    )
    sub.add_argument("--seed", type=int, required=True, help="generator seed")
    sub.add_argument(
        "--profile",
        choices=sorted(synthgen.PROFILES),
        default="default",
        help="parameter profile",
    )
    sub.add_argument("--out", required=True, help="directory for the generated files")
    sub.add_argument("--n-docs", type=int, help="override: document count")
    sub.add_argument("--n-authors", type=int, help="override: author count")
    sub.add_argument("--lotka-alpha", type=float, help="override: productivity exponent")
    sub.add_argument("--n-journals", type=int, help="override: journal count")
    sub.add_argument("--bradford-m", type=int, help="override: Bradford multiplier")
    sub.add_argument("--zones", type=int, help="override: Bradford zone count")
    sub.add_argument("--refs-per-doc", type=float, help="override: mean references per doc")
    sub.add_argument("--vocabulary", type=int, help="override: term pool size")
    sub.add_argument("--planted-topics", type=int, help="override: planted topic count")
    sub.set_defaults(func=cmd_synth)

    return parser, commands


# -- shared helpers --


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _require_file(path: str, what: str) -> str:
    if not Path(path).is_file():
        raise DataError(f"{what} file not found: {path}")
    return path


def _load_corpus(args, strict: bool = False):
    return load_corpus(_require_file(args.corpus, "corpus"), strict=strict)


def _get_index(args, corpus) -> textindex.Index:
    if getattr(args, "index", None):
        return textindex.Index.load(_require_file(args.index, "index"))
    return textindex.build_index(corpus, threads=getattr(args, "threads", 1))


def _load_seeds(path: str | None):
    if not path:
        return None
    lines = Path(_require_file(path, "seeds")).read_text(encoding="utf-8").splitlines()
    seeds = [normalize_author_name(line) for line in lines if line.strip()]
    if not seeds:
        raise DataError(f"seeds file is empty: {path}")
    return seeds


def _scored_docs_tsv(docs, original_ranks=None) -> str:
    if original_ranks is None:
        lines = ["rank\tdoc_id\tscore"]
        lines += [f"{d.rank}\t{d.doc_id}\t{d.score:.6f}" for d in docs]
    else:
        lines = ["rank\tdoc_id\tscore\toriginal_rank"]
        lines += [
            f"{d.rank}\t{d.doc_id}\t{d.score:.6f}\t{original_ranks[d.doc_id]}"
            for d in docs
        ]
    return "\n".join(lines) + "\n"


def _scored_docs_json(docs, original_ranks=None) -> str:
    rows = []
    for d in docs:
        row = {"rank": d.rank, "doc_id": d.doc_id, "score": d.score}
        if original_ranks is not None:
            row["original_rank"] = original_ranks[d.doc_id]
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


# -- subcommands --


def cmd_ingest(args) -> int:
    corpus, report = _load_corpus(args, strict=args.strict)
    stats = corpus_stats(corpus)
    if args.format == "json":
        payload = {"report": report.to_dict(), "stats": stats.to_dict()}
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"{key}\t{value}" for key, value in report.to_dict().items()
                 if not isinstance(value, list)]
        lines += [f"warning\t{line}\t{code}" for line, code in report.warnings]
        lines += [f"rejection\t{line}\t{code}" for line, code in report.rejections]
        lines += [f"{key}\t{value}" for key, value in stats.to_dict().items()]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_index(args) -> int:
    corpus, _ = _load_corpus(args)
    boosts = {
        "title": args.boost_title,
        "abstract": args.boost_abstract,
        "fulltext": args.boost_fulltext,
    }
    index = textindex.build_index(corpus, boosts=boosts, threads=args.threads)
    index.save(args.out)
    return 0


def cmd_search(args) -> int:
    if not args.index and not args.corpus:
        raise UsageError("search needs --index or --corpus")
    corpus = None
    if args.corpus:
        corpus, _ = _load_corpus(args)
    if args.index:
        index = textindex.Index.load(_require_file(args.index, "index"))
    else:
        index = textindex.build_index(corpus, threads=args.threads)
    hits = textindex.search(index, args.query, k=args.k)
    if args.format == "json":
        _emit(args, _scored_docs_json(hits))
    else:
        _emit(args, _scored_docs_tsv(hits))
    return 0


def cmd_facets(args) -> int:
    if args.zones is not None and args.dimension != "journal":
        raise UsageError("--zones only applies to --dimension journal")
    corpus, _ = _load_corpus(args)
    index = _get_index(args, corpus)
    subset = textindex.topic_subset(index, args.query)
    counts = facets.facet_counts(corpus, subset, args.dimension)
    if args.zones is not None:
        zones = informetrics.bradford_zones(counts, args.zones)
        if args.format == "json":
            rows = [{"entity": j, "count": c, "zone": z} for j, c, z in zones.entries]
            _emit(args, json.dumps(rows, indent=2) + "\n")
        else:
            lines = ["entity\tcount\tzone"]
            lines += [f"{j}\t{c}\t{z}" for j, c, z in zones.entries]
            _emit(args, "\n".join(lines) + "\n")
        return 0
    if args.format == "json":
        rows = [{"entity": fc.rendered(), "count": fc.count} for fc in counts]
        _emit(args, json.dumps(rows, indent=2) + "\n")
    else:
        lines = ["entity\tcount"]
        lines += [f"{fc.rendered()}\t{fc.count}" for fc in counts]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_rank(args) -> int:
    corpus, _ = _load_corpus(args)
    if args.similar_to:
        if args.mode == "bradford":
            raise UsageError("--similar-to works with --mode coupling or cocitation")
        graph = build_citation_graph(corpus)
        target = normalize_author_name(args.similar_to)
        similar = informetrics.rank_similar_authors(
            graph, target, mode=args.mode, limit=args.k
        )
        if args.format == "json":
            rows = [
                {"author": s.author.render(), "strength": s.strength, "mode": s.mode}
                for s in similar
            ]
            _emit(args, json.dumps(rows, indent=2) + "\n")
        else:
            lines = ["author\tstrength"]
            lines += [f"{s.author.render()}\t{s.strength}" for s in similar]
            _emit(args, "\n".join(lines) + "\n")
        return 0

    if not args.query:
        raise UsageError("rank needs --query (or --similar-to for author lists)")
    index = _get_index(args, corpus)
    baseline = textindex.search(index, args.query)
    original_ranks = {d.doc_id: d.rank for d in baseline}
    if args.mode == "bradford":
        reranked = informetrics.bradfordize_rerank(corpus, baseline)
    else:
        seeds = _load_seeds(args.seeds)
        if seeds is None:
            raise UsageError(f"--seeds is required for --mode {args.mode}")
        graph = build_citation_graph(corpus)
        reranked = informetrics.informetric_rerank(graph, baseline, seeds, mode=args.mode)
    if args.k is not None:
        reranked = reranked[: args.k]
    if args.format == "json":
        _emit(args, _scored_docs_json(reranked, original_ranks))
    else:
        _emit(args, _scored_docs_tsv(reranked, original_ranks))
    return 0


def cmd_eval(args) -> int:
    corpus, _ = _load_corpus(args)
    index = _get_index(args, corpus)
    graph = build_citation_graph(corpus)
    topic_list = load_topics(_require_file(args.topics, "topics"))
    if not topic_list:
        raise DataError(f"no topics in {args.topics}")
    gold_sets = {g.topic_id: g for g in load_gold_sets(_require_file(args.gold, "gold"))}
    seeds = _load_seeds(args.seeds)

    rows = [
        evaluation.coverage_row(
            corpus,
            index,
            graph,
            topic,
            gold_sets.get(topic.topic_id, GoldSet(topic_id=topic.topic_id)),
            k=args.k,
            ranker=args.ranker,
            seeds=seeds,
        )
        for topic in topic_list
    ]
    report = evaluation.coverage_report(rows, gold_sets=list(gold_sets.values()), graph=graph)
    if args.format == "json":
        payload = evaluation.report_to_dict(report)
        payload["match_audit"] = evaluation.match_report(list(gold_sets.values()), graph)
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, evaluation.render_report_tsv(report))
    return 0


def cmd_synth(args) -> int:
    overrides = {
        key: getattr(args, key)
        for key in (
            "n_docs",
            "n_authors",
            "lotka_alpha",
            "n_journals",
            "bradford_m",
            "zones",
            "refs_per_doc",
            "vocabulary",
            "planted_topics",
        )
        if getattr(args, key) is not None
    }
    params = synthgen.params_for_profile(args.profile, seed=args.seed, **overrides)
    bundle = synthgen.generate_corpus(params)
    synthgen.write_bundle(bundle, args.out)
    return 0


# -- driver --


def _apply_config(argv: list[str], commands: dict[str, _Parser]) -> None:
    config_path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            config_path = argv[i + 1]
        elif token.startswith("--config="):
            config_path = token.split("=", 1)[1]
    if not config_path:
        return
    try:
        config = json.loads(Path(config_path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataError(f"config file not found: {config_path}")
    except json.JSONDecodeError as exc:
        raise DataError(f"config file is not valid JSON: {exc}")
    if not isinstance(config, dict):
        raise DataError("config file must hold a JSON object")

    known = set()
    for sub in commands.values():
        known.update(action.dest for action in sub._actions)
    unknown = sorted(set(config) - known)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for sub in commands.values():
        sub.set_defaults(**{k: v for k, v in config.items()
                            if k in {a.dest for a in sub._actions}})


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = build_parser()
    try:
        _apply_config(argv, commands)
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help()
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BiblioRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
