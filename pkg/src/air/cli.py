"""Command line entry point.

    air index   --corpus DIR|FILE --out INDEX [analyzer flags]
    air search  --index INDEX [--page N] [--size N] [--no-synonyms] QUERY
    air suggest --index INDEX [-k N] PREFIX
    air eval    --index INDEX --queries FILE --qrels FILE
                [--compare-synonyms] [--format text|csv|json]
    air serve   --index INDEX [--port N] [--host H] [--static DIR]

Analyzer flags (--stopwords, --synonyms, --no-expand, --case-sensitive,
--synonym-mode) may also come from a JSON config file via --config; flags
override file values. Exit codes: 0 success, 2 configuration or flag
error, 3 ingestion error, 4 unreadable index, 5 missing relevance
judgments, 6 port busy.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

from air.analysis import (
    AnalyzerConfig,
    SynonymMode,
    SynonymTable,
    parse_stopword_file,
    parse_synonym_rules,
)
from air.errors import (
    AirError,
    CorruptIndex,
    FormatVersionMismatch,
    InvalidPage,
    IoFailure,
    MalformedLine,
    MalformedRule,
    MissingQrels,
)
from air.evaluation import (
    compare_runs,
    comparison_as_dict,
    evaluate,
    load_qrels,
    load_queries,
    render_comparison_text,
    render_report_csv,
    render_report_json,
    render_report_text,
)
from air.index import IndexBuilder, Index, iter_corpus, load_index, save_index
from air.search import SearchOptions, search
from air.server import SearchApp, ServerConfig, run_server
from air.suggest import SuggestConfig, autosuggest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INGEST = 3
EXIT_INDEX_UNREADABLE = 4
EXIT_MISSING_QRELS = 5
EXIT_PORT_BUSY = 6


def _err(message: str) -> None:
    print(f"air: {message}", file=sys.stderr)


def _load_config_file(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise AirError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise AirError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def _build_analyzer(cfg: dict, args: argparse.Namespace,
                    synonyms_enabled: bool = True) -> AnalyzerConfig:
    """Assemble the analyzer from config file values overridden by flags."""
    stopwords_path = getattr(args, "stopwords", None) or cfg.get("stopwords")
    synonyms_path = getattr(args, "synonyms", None) or cfg.get("synonyms")
    expand = cfg.get("expand", True)
    if getattr(args, "no_expand", False):
        expand = False
    ignore_case = cfg.get("ignore_case", True)
    if getattr(args, "case_sensitive", False):
        ignore_case = False
    mode_name = getattr(args, "synonym_mode", None) or cfg.get("synonym_mode", "query_only")
    try:
        synonym_mode = SynonymMode(mode_name)
    except ValueError:
        raise AirError(f"unknown synonym mode {mode_name!r}") from None

    stopwords = frozenset()
    if stopwords_path:
        try:
            stopwords = parse_stopword_file(Path(stopwords_path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise AirError(f"stopwords file: {exc}") from None

    table: Optional[SynonymTable] = None
    if synonyms_path and synonyms_enabled:
        try:
            text = Path(synonyms_path).read_text(encoding="utf-8")
        except OSError as exc:
            raise AirError(f"synonyms file: {exc}") from None
        try:
            table = parse_synonym_rules(text, ignore_case=ignore_case, expand=expand)
        except MalformedRule as exc:
            raise AirError(f"{synonyms_path}: {exc}") from None

    return AnalyzerConfig(stopwords=stopwords, synonyms=table, synonym_mode=synonym_mode)


def _search_options(cfg: dict, page: int = 1, size: int = 10) -> SearchOptions:
    return SearchOptions(
        k1=cfg.get("k1", 1.2),
        b=cfg.get("b", 0.75),
        page=page,
        size=size,
        pre_tag=cfg.get("pre_tag", "<em>"),
        post_tag=cfg.get("post_tag", "</em>"),
        snippet_window=cfg.get("snippet_window", 160),
    )


def _suggest_config(cfg: dict) -> SuggestConfig:
    sub = cfg.get("suggest", {})
    return SuggestConfig(
        max_edit_distance=sub.get("max_edit_distance", 2),
        max_suggestions=sub.get("max_suggestions", 10),
        min_prefix_length=sub.get("min_prefix_length", 2),
    )


def _open_index(path: str) -> Index:
    try:
        return load_index(path)
    except (IoFailure, CorruptIndex, FormatVersionMismatch) as exc:
        raise AirError(f"cannot read index {path}: {exc}") from None


def cmd_index(args: argparse.Namespace) -> int:
    try:
        cfg = _load_config_file(args.config)
        analyzer = _build_analyzer(cfg, args)
    except AirError as exc:
        _err(str(exc))
        return EXIT_CONFIG

    corpus = args.corpus or cfg.get("corpus")
    out = args.out or cfg.get("index")
    if not corpus or not out:
        _err("both a corpus (--corpus) and an output path (--out) are required")
        return EXIT_CONFIG

    builder = IndexBuilder(analyzer)
    try:
        count = 0
        for doc_id, text in iter_corpus(corpus):
            builder.add_document(doc_id, text)
            count += 1
    except (OSError, ValueError, AirError, json.JSONDecodeError) as exc:
        _err(f"ingestion failed: {exc}")
        return EXIT_INGEST

    index = builder.commit()
    if count == 0:
        _err("warning: corpus is empty, wrote an index with no documents")
    try:
        save_index(index, out)
    except IoFailure as exc:
        _err(f"cannot write index: {exc}")
        return EXIT_INGEST
    print(f"documents: {index.doc_count}")
    print(f"avgdl: {index.avgdl:.4f}")
    print(f"vocabulary: {len(index.vocab())}")
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    try:
        cfg = _load_config_file(args.config)
        analyzer = _build_analyzer(cfg, args, synonyms_enabled=not args.no_synonyms)
        options = _search_options(cfg, page=args.page, size=args.size)
        suggest_cfg = _suggest_config(cfg)
    except AirError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except ValueError as exc:
        _err(str(exc))
        return EXIT_CONFIG

    try:
        index = _open_index(args.index)
    except AirError as exc:
        _err(str(exc))
        return EXIT_INDEX_UNREADABLE

    try:
        results = search(index, args.query, options, analyzer, suggest_cfg)
    except InvalidPage as exc:
        _err(str(exc))
        return EXIT_CONFIG
    print(f"total: {results.total}")
    if results.did_you_mean:
        print(f"did you mean: {results.did_you_mean}")
    for hit in results.hits:
        print(f"{hit.doc}\t{hit.score:.4f}\t{hit.snippet}")
    return EXIT_OK


def cmd_suggest(args: argparse.Namespace) -> int:
    try:
        cfg = _load_config_file(args.config)
        suggest_cfg = _suggest_config(cfg)
    except (AirError, ValueError) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    try:
        index = _open_index(args.index)
    except AirError as exc:
        _err(str(exc))
        return EXIT_INDEX_UNREADABLE
    for term in autosuggest(index, args.prefix, args.k, suggest_cfg):
        print(term)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        cfg = _load_config_file(args.config)
        analyzer_with = _build_analyzer(cfg, args)
        options = _search_options(cfg)
    except (AirError, ValueError) as exc:
        _err(str(exc))
        return EXIT_CONFIG

    try:
        queries = load_queries(Path(args.queries).read_text(encoding="utf-8"))
        qrels = load_qrels(Path(args.qrels).read_text(encoding="utf-8"))
    except OSError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except (MalformedLine, AirError) as exc:
        _err(f"{exc}")
        return EXIT_CONFIG

    try:
        index = _open_index(args.index)
    except AirError as exc:
        _err(str(exc))
        return EXIT_INDEX_UNREADABLE

    try:
        if args.compare_synonyms:
            analyzer_without = replace(analyzer_with, synonyms=None)
            without = evaluate(index, queries, qrels, analyzer_without, options)
            with_syn = evaluate(index, queries, qrels, analyzer_with, options)
            delta = compare_runs(without, with_syn)
            if args.format == "json":
                print(json.dumps(comparison_as_dict(without, with_syn, delta),
                                 ensure_ascii=False, indent=2))
            elif args.format == "csv":
                print("# without synonyms")
                print(render_report_csv(without), end="")
                print("# with synonyms")
                print(render_report_csv(with_syn), end="")
            else:
                print(render_comparison_text(without, with_syn, delta), end="")
        else:
            report = evaluate(index, queries, qrels, analyzer_with, options)
            if args.format == "json":
                print(render_report_json(report), end="")
            elif args.format == "csv":
                print(render_report_csv(report), end="")
            else:
                print(render_report_text(report), end="")
    except MissingQrels as exc:
        _err(str(exc))
        return EXIT_MISSING_QRELS
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        cfg = _load_config_file(args.config)
        analyzer = _build_analyzer(cfg, args)
        options = _search_options(cfg)
        suggest_cfg = _suggest_config(cfg)
        server_cfg_values = cfg.get("server", {})
        server_cfg = ServerConfig(
            port=args.port or server_cfg_values.get("port", 8080),
            host=args.host or server_cfg_values.get("host", "127.0.0.1"),
            static_dir=args.static or server_cfg_values.get("static_dir"),
            messages=server_cfg_values.get("messages", {}),
        )
    except (AirError, ValueError) as exc:
        _err(str(exc))
        return EXIT_CONFIG

    try:
        index = _open_index(args.index)
    except AirError as exc:
        _err(str(exc))
        return EXIT_INDEX_UNREADABLE

    app = SearchApp(index, analyzer, options, suggest_cfg,
                    messages=server_cfg.messages)
    print(f"serving on http://{server_cfg.host}:{server_cfg.port}/", file=sys.stderr)
    try:
        run_server(app, server_cfg)
    except OSError as exc:
        _err(f"cannot bind port {server_cfg.port}: {exc}")
        return EXIT_PORT_BUSY
    return EXIT_OK


def _add_analyzer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--stopwords", help="stopword file (one term per line)")
    parser.add_argument("--synonyms", help="synonym rules file")
    parser.add_argument("--no-expand", action="store_true",
                        help="collapse equivalence classes to their first member")
    parser.add_argument("--case-sensitive", action="store_true",
                        help="match synonyms case sensitively")
    parser.add_argument("--synonym-mode", choices=[m.value for m in SynonymMode],
                        help="when the synonym filter applies (default query_only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="air",
                                     description="Afaan Oromo full-text search engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build and save an index")
    p_index.add_argument("--corpus", help="directory of .txt files or a JSONL records file")
    p_index.add_argument("--out", help="output index path")
    _add_analyzer_flags(p_index)
    p_index.set_defaults(func=cmd_index)

    p_search = sub.add_parser("search", help="run one query against an index")
    p_search.add_argument("--index", required=True)
    p_search.add_argument("--page", type=int, default=1)
    p_search.add_argument("--size", type=int, default=10)
    p_search.add_argument("--no-synonyms", action="store_true",
                          help="disable the synonym filter for this query")
    _add_analyzer_flags(p_search)
    p_search.add_argument("query")
    p_search.set_defaults(func=cmd_search)

    p_suggest = sub.add_parser("suggest", help="prefix autosuggest")
    p_suggest.add_argument("--index", required=True)
    p_suggest.add_argument("-k", type=int, default=10)
    p_suggest.add_argument("--config", help="JSON config file")
    p_suggest.add_argument("prefix")
    p_suggest.set_defaults(func=cmd_suggest)

    p_eval = sub.add_parser("eval", help="precision/recall evaluation")
    p_eval.add_argument("--index", required=True)
    p_eval.add_argument("--queries", required=True, help="qid<TAB>query per line")
    p_eval.add_argument("--qrels", required=True, help="qid 0 docid rel per line")
    p_eval.add_argument("--compare-synonyms", action="store_true",
                        help="evaluate with synonyms off and on, and report deltas")
    p_eval.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_analyzer_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="serve the HTTP JSON API")
    p_serve.add_argument("--index", required=True)
    p_serve.add_argument("--port", type=int)
    p_serve.add_argument("--host")
    p_serve.add_argument("--static", help="directory of static UI assets to serve at /")
    _add_analyzer_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_CONFIG
    return args.func(args)


def main(argv: Optional[list[str]] = None) -> None:
    raise SystemExit(run(argv))
