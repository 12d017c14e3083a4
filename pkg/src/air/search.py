"""Query execution: BM25 ranking, highlighting, pagination.

Queries run with OR semantics over the analyzed (and possibly
synonym-expanded) terms: a document matches if it contains any query term,
and its score is the sum of per-term BM25 contributions. A term repeated
in the expanded query counts once, so an equivalence class cannot multiply
one conceptual term's weight by its size. Ties are broken by ascending
document id, making every ranking fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from air.analysis import AnalyzeMode, AnalyzerConfig, analyze, terms_of
from air.errors import InvalidPage
from air.index import Index
from air.suggest import SuggestConfig, did_you_mean


@dataclass(frozen=True)
class SearchOptions:
    k1: float = 1.2
    b: float = 0.75
    page: int = 1
    size: int = 10
    pre_tag: str = "<em>"
    post_tag: str = "</em>"
    snippet_window: int = 160
    # Applied to the non-markup parts of snippets (the HTTP server passes
    # html.escape so stored text cannot inject markup past the tags).
    escape: Optional[Callable[[str], str]] = None

    def __post_init__(self):
        if self.k1 < 0:
            raise ValueError("k1 must be >= 0")
        if not 0 <= self.b <= 1:
            raise ValueError("b must be in [0, 1]")
        if self.size < 1:
            raise ValueError("size must be >= 1")


@dataclass(frozen=True)
class Hit:
    doc: str
    score: float
    snippet: str
    matched_terms: frozenset[str]


@dataclass(frozen=True)
class SearchResults:
    total: int
    page: int
    size: int
    hits: tuple[Hit, ...]
    did_you_mean: Optional[str] = None


def bm25_score(tf: int, df: int, n_docs: int, doclen: int, avgdl: float,
               k1: float = 1.2, b: float = 0.75) -> float:
    """One term's BM25 contribution for one document.

    idf uses the plus-one smoothed form ln(1 + (N - df + 0.5)/(df + 0.5)),
    which stays positive even when a term occurs in most documents.
    """
    idf = math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))
    norm = k1 * (1.0 - b + b * doclen / avgdl)
    return idf * tf * (k1 + 1.0) / (tf + norm)


def execute_query(index: Index, query_terms: Sequence[str],
                  options: Optional[SearchOptions] = None
                  ) -> list[tuple[str, float, frozenset[str]]]:
    """Rank every document matching any query term.

    Returns (doc_id, score, matched_terms) tuples sorted by score
    descending, doc id ascending. Duplicate query terms are collapsed
    before scoring.
    """
    options = options or SearchOptions()
    n_docs = index.doc_count
    if n_docs == 0:
        return []
    avgdl = index.avgdl

    scores: dict[str, float] = {}
    matched: dict[str, set[str]] = {}
    for term in sorted(set(query_terms)):
        plist = index.postings_for(term)
        if not plist:
            continue
        df = len(plist)
        for posting in plist:
            contribution = bm25_score(
                posting.tf, df, n_docs, index.doc_length(posting.doc), avgdl,
                options.k1, options.b,
            )
            scores[posting.doc] = scores.get(posting.doc, 0.0) + contribution
            matched.setdefault(posting.doc, set()).add(term)

    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return [(doc, score, frozenset(matched[doc])) for doc, score in ranked]


def _is_word_char(ch: str) -> bool:
    return ch.isalnum() or ch in ("'", "’")


def make_snippet(stored_text: str, match_offsets: Sequence[tuple[int, int]],
                 options: Optional[SearchOptions] = None) -> str:
    """Extract a window around the first match and wrap every in-window
    match with the highlight tags.

    The window is snippet_window characters centered on the first match,
    widened outward to whole tokens; truncated ends get an ellipsis. With
    no matches the leading window of the text is returned untagged.
    """
    options = options or SearchOptions()
    escape = options.escape or (lambda s: s)
    text = stored_text
    n = len(text)

    offsets = sorted(set(match_offsets))
    if offsets:
        first_start, first_end = offsets[0]
        center = (first_start + first_end) // 2
        half = options.snippet_window // 2
        win_start = max(0, center - half)
        win_end = min(n, win_start + options.snippet_window)
        # Never clip the first match itself.
        win_start = min(win_start, first_start)
        win_end = max(win_end, first_end)
    else:
        win_start, win_end = 0, min(n, options.snippet_window)

    # Widen to whole tokens so the window never starts or ends mid-word.
    while win_start > 0 and _is_word_char(text[win_start - 1]) and _is_word_char(text[win_start]):
        win_start -= 1
    while win_end < n and win_end > 0 and _is_word_char(text[win_end - 1]) and _is_word_char(text[win_end]):
        win_end += 1

    # Drop surrounding whitespace; matches are never whitespace, so this
    # cannot clip one.
    while win_end > win_start and text[win_end - 1].isspace():
        win_end -= 1
    while win_start < win_end and text[win_start].isspace():
        win_start += 1

    inside = [(s, e) for s, e in offsets if s >= win_start and e <= win_end]
    parts: list[str] = []
    if win_start > 0:
        parts.append("…")
    cursor = win_start
    for start, end in inside:
        if start < cursor:
            continue  # overlapping occurrence already covered
        parts.append(escape(text[cursor:start]))
        parts.append(options.pre_tag)
        parts.append(escape(text[start:end]))
        parts.append(options.post_tag)
        cursor = end
    parts.append(escape(text[cursor:win_end]))
    if win_end < n:
        parts.append("…")
    return "".join(parts)


def _doc_match_offsets(index: Index, doc_id: str,
                       matched_terms: frozenset[str]) -> list[tuple[int, int]]:
    offsets: list[tuple[int, int]] = []
    for term in matched_terms:
        for posting in index.postings_for(term):
            if posting.doc == doc_id:
                offsets.extend(posting.occurrences)
                break
    return offsets


def search(index: Index, raw_query: str, options: Optional[SearchOptions] = None,
           analyzer_config: Optional[AnalyzerConfig] = None,
           suggest_config: Optional[SuggestConfig] = None) -> SearchResults:
    """Full query pipeline: analyze, rank, paginate, highlight, suggest.

    The query is analyzed in QUERY mode, so synonym expansion happens
    here. did_you_mean is attempted whenever at least one pre-expansion
    query term is absent from the index vocabulary.
    """
    options = options or SearchOptions()
    analyzer_config = analyzer_config or AnalyzerConfig()
    suggest_config = suggest_config or SuggestConfig()
    if options.page < 1:
        raise InvalidPage(f"page must be >= 1, got {options.page}")

    expanded = terms_of(analyze(raw_query, analyzer_config, AnalyzeMode.QUERY))
    plain_config = AnalyzerConfig(
        stopwords=analyzer_config.stopwords,
        synonyms=None,
        synonym_mode=analyzer_config.synonym_mode,
    )
    pre_expansion = terms_of(analyze(raw_query, plain_config, AnalyzeMode.QUERY))

    ranking = execute_query(index, expanded, options)

    suggestion = None
    if any(index.doc_frequency(term) == 0 for term in pre_expansion):
        suggestion = did_you_mean(index, pre_expansion, suggest_config)

    start = (options.page - 1) * options.size
    page_rows = ranking[start : start + options.size]
    hits = tuple(
        Hit(
            doc=doc,
            score=score,
            snippet=make_snippet(
                index.stored_text(doc), _doc_match_offsets(index, doc, terms), options
            ),
            matched_terms=terms,
        )
        for doc, score, terms in page_rows
    )
    return SearchResults(
        total=len(ranking),
        page=options.page,
        size=options.size,
        hits=hits,
        did_you_mean=suggestion,
    )
