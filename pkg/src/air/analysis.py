"""Text analysis chain: tokenizer and token filters.

Text is turned into index/query terms by a fixed pipeline:

    tokenize -> stopword filter -> synonym filter -> lowercase filter

The synonym filter normally runs only for query-time analysis (the
``QUERY_ONLY`` mode), so the index stores surface terms while queries get
expanded against the thesaurus. Because it runs before the lowercase
filter, synonym matching does its own case folding when the table says so.

All functions here are pure: they take immutable inputs and build new
token sequences, so they are safe to call from any number of threads.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from air.errors import MalformedRule

# Apostrophes that are word-internal when flanked by letters, as in the
# Afaan Oromo hudhaa ("ba'e"). U+2019 is the typographic right quote.
_APOSTROPHES = ("'", "’")


@dataclass(frozen=True, slots=True)
class Token:
    """One analyzed term occurrence.

    ``start``/``end`` are character offsets into the source text
    (half-open). ``position`` is the token's ordinal in the stream.
    ``injected`` marks tokens produced by synonym substitution rather than
    present in the source; they carry the offsets of the span they replaced.
    """

    term: str
    start: int
    end: int
    position: int
    injected: bool = False


class RuleKind(Enum):
    EXPLICIT = "explicit"
    EQUIVALENCE = "equivalence"


# A synonym entry is a sequence of one or more terms ("magaalaa guddoo"
# is a two-term entry matched against consecutive tokens).
Entry = tuple[str, ...]


@dataclass(frozen=True)
class SynonymRule:
    """One parsed synonym rule.

    EXPLICIT rules map any left-hand entry to all right-hand entries; the
    matched text is dropped unless it also appears on the right. EQUIVALENCE
    rules make every listed entry substitutable for every other.
    """

    kind: RuleKind
    lhs: tuple[Entry, ...]
    rhs: tuple[Entry, ...] = ()


@dataclass(frozen=True)
class SynonymTable:
    """Parsed synonym rules plus the match options they were loaded with."""

    rules: tuple[SynonymRule, ...]
    ignore_case: bool = True
    expand: bool = True

    def __len__(self) -> int:
        return len(self.rules)


class SynonymMode(Enum):
    QUERY_ONLY = "query_only"
    INDEX_AND_QUERY = "index_and_query"
    OFF = "off"


class AnalyzeMode(Enum):
    INDEX = "index"
    QUERY = "query"


@dataclass(frozen=True)
class AnalyzerConfig:
    """Configuration for the analysis chain.

    The filter order is fixed; only the stopword set, the synonym table
    and the mode in which synonyms apply are configurable.
    """

    stopwords: frozenset[str] = frozenset()
    synonyms: Optional[SynonymTable] = None
    synonym_mode: SynonymMode = SynonymMode.QUERY_ONLY

    def fingerprint(self) -> str:
        """Stable digest of this configuration, stored in built indexes."""
        h = hashlib.sha256()
        for word in sorted(self.stopwords):
            h.update(word.encode("utf-8") + b"\n")
        h.update(b"--synonyms--\n")
        if self.synonyms is not None:
            h.update(
                f"ignore_case={self.synonyms.ignore_case} "
                f"expand={self.synonyms.expand}\n".encode()
            )
            for rule in self.synonyms.rules:
                lhs = ";".join(" ".join(e) for e in rule.lhs)
                rhs = ";".join(" ".join(e) for e in rule.rhs)
                h.update(f"{rule.kind.value}|{lhs}|{rhs}\n".encode("utf-8"))
        h.update(f"--mode={self.synonym_mode.value}--".encode())
        return h.hexdigest()


def _is_word_char(ch: str) -> bool:
    # Letters and digits form tokens; everything else separates them.
    return ch.isalnum()


def tokenize(text: str) -> list[Token]:
    """Split text into maximal runs of letters/digits.

    An apostrophe (U+0027 or U+2019) with a letter on both sides stays
    inside the token, so "ba'e" is one term. Offsets index the original
    text; positions run 0, 1, 2, ...
    """
    tokens: list[Token] = []
    i = 0
    n = len(text)
    position = 0
    while i < n:
        if not _is_word_char(text[i]):
            i += 1
            continue
        start = i
        while i < n:
            if _is_word_char(text[i]):
                i += 1
            elif (
                text[i] in _APOSTROPHES
                and i + 1 < n
                and text[i - 1].isalpha()
                and text[i + 1].isalpha()
            ):
                i += 2
            else:
                break
        tokens.append(Token(term=text[start:i], start=start, end=i, position=position))
        position += 1
    return tokens


def apply_lowercase(tokens: Sequence[Token]) -> list[Token]:
    """Lowercase every term; offsets, positions and flags are untouched."""
    return [
        t if t.term == t.term.lower()
        else Token(t.term.lower(), t.start, t.end, t.position, t.injected)
        for t in tokens
    ]


def parse_stopword_file(text: str) -> frozenset[str]:
    """Parse a stopword file: one term per line, '#' comments, case-folded."""
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line.lower())
    return frozenset(words)


def apply_stopwords(tokens: Sequence[Token], stopset: frozenset[str]) -> list[Token]:
    """Drop tokens whose case-folded term is in the stopset.

    Surviving tokens keep their original positions and offsets.
    """
    if not stopset:
        return list(tokens)
    return [t for t in tokens if t.term.lower() not in stopset]


def parse_synonym_rules(
    text: str, ignore_case: bool = True, expand: bool = True
) -> SynonymTable:
    """Parse a synonym file into a table.

    Each non-blank, non-comment line is one rule. A line with "=>" maps the
    comma-separated entries on the left to those on the right (explicit
    mapping); a plain comma-separated list is an equivalence class. Entries
    are trimmed; internal spaces split an entry into a multi-term sequence.

    Raises MalformedRule (with the line number) for a line with an empty
    side of "=>", more than one "=>", or an empty entry between commas.
    """

    def split_entries(chunk: str, line_no: int) -> tuple[Entry, ...]:
        entries = []
        for raw in chunk.split(","):
            terms = tuple(raw.split())
            if not terms:
                raise MalformedRule(line_no, "empty entry")
            entries.append(terms)
        return tuple(entries)

    rules: list[SynonymRule] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        arrows = stripped.count("=>")
        if arrows > 1:
            raise MalformedRule(line_no, "more than one '=>'")
        if arrows == 1:
            left, right = stripped.split("=>")
            if not left.strip() or not right.strip():
                raise MalformedRule(line_no, "empty side of '=>'")
            rules.append(
                SynonymRule(
                    kind=RuleKind.EXPLICIT,
                    lhs=split_entries(left, line_no),
                    rhs=split_entries(right, line_no),
                )
            )
        else:
            entries = split_entries(stripped, line_no)
            if len(entries) < 2:
                raise MalformedRule(line_no, "equivalence class needs at least two entries")
            rules.append(SynonymRule(kind=RuleKind.EQUIVALENCE, lhs=entries))
    return SynonymTable(rules=tuple(rules), ignore_case=ignore_case, expand=expand)


def _fold(term: str, ignore_case: bool) -> str:
    return term.lower() if ignore_case else term


def _replacements(rule: SynonymRule, expand: bool) -> tuple[Entry, ...]:
    """What a match of this rule injects at the matched span."""
    if rule.kind is RuleKind.EXPLICIT:
        return rule.rhs
    if expand:
        return rule.lhs
    return (rule.lhs[0],)


class _Matcher:
    """Left-to-right greedy longest-match over consecutive token terms.

    Built once per table; maps folded left-hand sequences to the merged
    replacement entries of every rule sharing that sequence.
    """

    def __init__(self, table: SynonymTable):
        self.ignore_case = table.ignore_case
        self.by_lhs: dict[tuple[str, ...], list[Entry]] = {}
        self.max_len = 0
        for rule in table.rules:
            for entry in rule.lhs:
                key = tuple(_fold(t, self.ignore_case) for t in entry)
                bucket = self.by_lhs.setdefault(key, [])
                for replacement in _replacements(rule, table.expand):
                    if replacement not in bucket:
                        bucket.append(replacement)
                self.max_len = max(self.max_len, len(key))

    def longest_match(self, terms: Sequence[str], at: int) -> Optional[tuple[int, list[Entry]]]:
        limit = min(self.max_len, len(terms) - at)
        for length in range(limit, 0, -1):
            key = tuple(terms[at : at + length])
            found = self.by_lhs.get(key)
            if found is not None:
                return length, found
        return None


def apply_synonyms(tokens: Sequence[Token], table: SynonymTable) -> list[Token]:
    """Substitute synonym rules into a token stream.

    Matching is greedy longest-match, left to right, without overlaps.
    All tokens injected for one matched span share the position of the
    span's first token and the character offsets of the whole span; an
    injected entry identical to the matched text keeps injected=False
    since it was present in the source.
    """
    if not table.rules or not tokens:
        return list(tokens)

    matcher = _Matcher(table)
    folded = [_fold(t.term, table.ignore_case) for t in tokens]
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        match = matcher.longest_match(folded, i)
        if match is None:
            out.append(tokens[i])
            i += 1
            continue
        length, replacements = match
        span = tokens[i : i + length]
        matched_key = tuple(folded[i : i + length])
        start, end, position = span[0].start, span[-1].end, span[0].position
        for entry in replacements:
            entry_key = tuple(_fold(t, table.ignore_case) for t in entry)
            if entry_key == matched_key:
                # The original text survives untouched (equivalence classes,
                # or an explicit rule whose right side repeats the left).
                out.extend(span)
            else:
                for term in entry:
                    out.append(
                        Token(term=term, start=start, end=end, position=position,
                              injected=True)
                    )
        i += length
    return out


def analyze(text: str, config: AnalyzerConfig, mode: AnalyzeMode) -> list[Token]:
    """Run the full chain: tokenize, stopwords, synonyms (mode permitting),
    lowercase.

    Synonyms apply at query time under QUERY_ONLY, at both times under
    INDEX_AND_QUERY, and never under OFF or when no table is configured.
    """
    tokens = apply_stopwords(tokenize(text), config.stopwords)
    if config.synonyms is not None and _synonyms_active(config.synonym_mode, mode):
        tokens = apply_synonyms(tokens, config.synonyms)
    return apply_lowercase(tokens)


def _synonyms_active(synonym_mode: SynonymMode, mode: AnalyzeMode) -> bool:
    if synonym_mode is SynonymMode.OFF:
        return False
    if synonym_mode is SynonymMode.INDEX_AND_QUERY:
        return True
    return mode is AnalyzeMode.QUERY


def terms_of(tokens: Iterable[Token]) -> list[str]:
    """Convenience: just the term strings of a token stream."""
    return [t.term for t in tokens]
