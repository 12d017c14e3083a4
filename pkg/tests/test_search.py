"""BM25 scoring, query execution, snippets, pagination, search pipeline."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from air.analysis import AnalyzerConfig, parse_synonym_rules
from air.errors import InvalidPage
from air.index import IndexBuilder
from air.search import (
    SearchOptions,
    bm25_score,
    execute_query,
    make_snippet,
    search,
)

# Frozen from a 50-digit decimal evaluation of the closed form at
# tf=2, df=2, N=3, doclen=4, avgdl=3, k1=1.2, b=0.75.
BM25_GOLDEN = 0.5908617053374962


def brute_force_ranking(stored: dict[str, str], query_terms: list[str],
                        k1: float = 1.2, b: float = 0.75) -> list[tuple[str, float]]:
    """Re-derives tf/df/avgdl by scanning stored texts (whitespace corpora)."""
    n_docs = len(stored)
    tokens = {doc: text.split() for doc, text in stored.items()}
    avgdl = sum(len(ts) for ts in tokens.values()) / n_docs
    distinct = sorted(set(query_terms))
    scores = {}
    for doc, ts in tokens.items():
        total = 0.0
        for term in distinct:
            tf = ts.count(term)
            if tf == 0:
                continue
            df = sum(1 for other in tokens.values() if term in other)
            idf = math.log(1 + (n_docs - df + 0.5) / (df + 0.5))
            total += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len(ts) / avgdl))
        if total > 0:
            scores[doc] = total
    return sorted(scores.items(), key=lambda item: (-item[1], item[0]))


def index_of(stored: dict[str, str]) -> "Index":
    builder = IndexBuilder()
    for doc, text in stored.items():
        builder.add_document(doc, text)
    return builder.commit()


class TestBm25Score:
    def test_algebraic_cancellation(self):
        # tf=1, df=N=1, doclen=avgdl: the tf part cancels to 1.
        for k1, b in ((1.2, 0.75), (0.0, 0.0), (2.0, 1.0)):
            score = bm25_score(1, 1, 1, 5, 5.0, k1, b)
            assert score == pytest.approx(math.log(4 / 3), rel=1e-12)

    def test_golden_constant(self):
        assert bm25_score(2, 2, 3, 4, 3.0, 1.2, 0.75) == pytest.approx(
            BM25_GOLDEN, abs=1e-12
        )

    def test_b_zero_removes_length_dependence(self):
        a = bm25_score(3, 2, 10, 1, 4.0, 1.2, 0.0)
        b = bm25_score(3, 2, 10, 1000, 4.0, 1.2, 0.0)
        assert a == b

    def test_monotone_in_tf(self):
        scores = [bm25_score(tf, 3, 10, 5, 5.0) for tf in range(1, 20)]
        assert all(x < y for x, y in zip(scores, scores[1:]))

    def test_decreasing_in_df(self):
        scores = [bm25_score(2, df, 10, 5, 5.0) for df in range(1, 11)]
        assert all(x > y for x, y in zip(scores, scores[1:]))

    def test_idf_positive_for_all_valid_df(self):
        for n_docs in range(1, 30):
            for df in range(1, n_docs + 1):
                assert bm25_score(1, df, n_docs, 3, 3.0) > 0


class TestExecuteQuery:
    def test_unknown_term(self):
        index = index_of({"d1": "aadaa"})
        assert execute_query(index, ["zzz"]) == []

    def test_single_term_single_doc(self):
        index = index_of({"d1": "aadaa", "d2": "seenaa"})
        ranking = execute_query(index, ["aadaa"])
        assert [doc for doc, _s, _t in ranking] == ["d1"]

    def test_empty_index(self):
        assert execute_query(index_of({}), ["aadaa"]) == []

    def test_duplicate_terms_count_once(self):
        index = index_of({"d1": "aadaa seenaa"})
        once = execute_query(index, ["aadaa"])
        twice = execute_query(index, ["aadaa", "aadaa"])
        assert once == twice

    def test_matches_brute_force_on_tiny_corpora(self):
        rng = random.Random(42)
        alphabet = ["aa", "bb", "cc", "dd", "ee", "ff"]
        for _ in range(60):
            stored = {
                f"d{i}": " ".join(rng.choices(alphabet, k=rng.randint(1, 6)))
                for i in range(rng.randint(1, 6))
            }
            query = rng.choices(alphabet, k=rng.randint(1, 3))
            index = index_of(stored)
            expected = brute_force_ranking(stored, query)
            actual = execute_query(index, query)
            assert [doc for doc, _s, _t in actual] == [doc for doc, _s in expected]
            for (_, got, _t), (_, want) in zip(actual, expected):
                assert got == pytest.approx(want, rel=1e-9)

    def test_deterministic_tie_break(self):
        index = index_of({"db": "aadaa", "da": "aadaa"})
        ranking = execute_query(index, ["aadaa"])
        assert [doc for doc, _s, _t in ranking] == ["da", "db"]


class TestMakeSnippet:
    def test_window_covers_whole_text(self):
        snippet = make_snippet("sirna gadaa oromoo", [(6, 11)])
        assert snippet == "sirna <em>gadaa</em> oromoo"

    def test_no_matches_leading_window(self):
        text = "aadaa seenaa uummata oromoo"
        assert make_snippet(text, []) == text

    def test_no_matches_truncated(self):
        text = "aadaa " * 60  # 360 chars
        snippet = make_snippet(text.strip(), [], SearchOptions(snippet_window=30))
        assert snippet.endswith("…")
        assert "<em>" not in snippet

    def test_ellipses_on_truncated_ends(self):
        text = "alpha " * 40 + "gadaa" + " omega" * 40
        start = text.index("gadaa")
        snippet = make_snippet(text, [(start, start + 5)],
                               SearchOptions(snippet_window=40))
        assert snippet.startswith("…") and snippet.endswith("…")
        assert "<em>gadaa</em>" in snippet

    def test_window_expands_to_whole_tokens(self):
        text = "abcdefgh ijklmnop qrstuvwx yz"
        start = text.index("ijklmnop")
        snippet = make_snippet(text, [(start, start + 8)],
                               SearchOptions(snippet_window=10))
        body = snippet.strip("…")
        for fragment in body.replace("<em>", "").replace("</em>", "").split():
            assert fragment in text.split()

    def test_custom_tags(self):
        options = SearchOptions(pre_tag="[", post_tag="]")
        assert make_snippet("aadaa", [(0, 5)], options) == "[aadaa]"

    def test_escape_applied_outside_tags(self):
        import html
        options = SearchOptions(escape=html.escape)
        snippet = make_snippet("<b> aadaa </b>", [(4, 9)], options)
        assert snippet == "&lt;b&gt; <em>aadaa</em> &lt;/b&gt;"

    @given(
        st.lists(
            st.sampled_from(["aadaa", "seenaa", "oromoo", "gadaa", "irreecha"]),
            min_size=1,
            max_size=40,
        ),
        st.integers(min_value=0, max_value=39),
    )
    def test_tag_count_equals_in_window_matches(self, words, match_word):
        text = " ".join(words)
        target = words[match_word % len(words)]
        offsets = []
        at = 0
        while True:
            found = text.find(target, at)
            if found < 0:
                break
            offsets.append((found, found + len(target)))
            at = found + 1
        options = SearchOptions(snippet_window=60)
        snippet = make_snippet(text, offsets, options)
        in_window = snippet.count(options.pre_tag)
        assert in_window == snippet.count(options.post_tag)
        assert in_window >= 1


class TestSearch:
    def test_stopword_only_query(self, sample_index, analyzer_config):
        results = search(sample_index, "fi kan", SearchOptions(), analyzer_config)
        assert results.total == 0
        assert results.hits == ()

    def test_equivalence_union(self, sample_index, analyzer_config):
        results = search(sample_index, "gaarii", SearchOptions(), analyzer_config)
        docs = {hit.doc for hit in results.hits}
        assert docs == {"d02", "d03", "d04", "d05", "d14"}

    def test_equivalence_symmetry_identical_rankings(self, sample_index,
                                                     analyzer_config):
        rankings = [
            [(h.doc, h.score) for h in
             search(sample_index, member, SearchOptions(size=50), analyzer_config).hits]
            for member in ("gaarii", "misha", "bayeessa", "dansa")
        ]
        assert all(r == rankings[0] for r in rankings)

    def test_scores_positive_and_sorted(self, sample_index, analyzer_config):
        results = search(sample_index, "oromoo aadaa", SearchOptions(size=50),
                         analyzer_config)
        assert all(hit.score > 0 for hit in results.hits)
        keys = [(-hit.score, hit.doc) for hit in results.hits]
        assert keys == sorted(keys)

    def test_snippets_tagged_for_matches(self, sample_index, analyzer_config):
        results = search(sample_index, "irreechaa", SearchOptions(), analyzer_config)
        assert results.hits
        for hit in results.hits:
            assert "<em>" in hit.snippet

    def test_page_zero_rejected(self, sample_index, analyzer_config):
        with pytest.raises(InvalidPage):
            search(sample_index, "aadaa", SearchOptions(page=0), analyzer_config)

    def test_page_beyond_last_is_empty(self, sample_index, analyzer_config):
        results = search(sample_index, "aadaa", SearchOptions(page=99),
                         analyzer_config)
        assert results.hits == ()
        assert results.total > 0

    def test_pagination_concatenation(self, sample_index, analyzer_config):
        unpaginated = search(sample_index, "oromoo seenaa aadaa",
                             SearchOptions(size=100), analyzer_config)
        all_docs = [hit.doc for hit in unpaginated.hits]
        size = 2
        walked = []
        page = 1
        while True:
            results = search(sample_index, "oromoo seenaa aadaa",
                             SearchOptions(page=page, size=size), analyzer_config)
            if not results.hits:
                break
            walked.extend(hit.doc for hit in results.hits)
            page += 1
        assert walked == all_docs
        assert len(set(walked)) == len(walked)

    def test_did_you_mean_triggers_only_for_oov(self, sample_index, analyzer_config):
        hit = search(sample_index, "ormiya", SearchOptions(), analyzer_config)
        assert hit.did_you_mean == "oromiyaa"
        ok = search(sample_index, "oromoo", SearchOptions(), analyzer_config)
        assert ok.did_you_mean is None

    def test_monotonicity_under_added_rules(self, sample_index, plain_config,
                                            analyzer_config):
        for query in ("gaarii", "aadaa uummata", "barnoota", "magaalaa guddoo"):
            without = {
                h.doc for h in search(sample_index, query,
                                      SearchOptions(size=100), plain_config).hits
            }
            with_rules = {
                h.doc for h in search(sample_index, query,
                                      SearchOptions(size=100), analyzer_config).hits
            }
            assert with_rules >= without


class TestOptionsValidation:
    def test_bad_k1(self):
        with pytest.raises(ValueError):
            SearchOptions(k1=-0.1)

    def test_bad_b(self):
        with pytest.raises(ValueError):
            SearchOptions(b=1.5)

    def test_bad_size(self):
        with pytest.raises(ValueError):
            SearchOptions(size=0)
