"""Spelling suggestion and prefix autosuggest over the index vocabulary.

Both suggesters are driven purely by the committed index: did_you_mean
replaces out-of-vocabulary query terms with their nearest vocabulary term
by Levenshtein distance, and autosuggest completes a prefix with the most
frequent matching terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from air.index import Index


@dataclass(frozen=True)
class SuggestConfig:
    max_edit_distance: int = 2
    max_suggestions: int = 10
    min_prefix_length: int = 2

    def __post_init__(self):
        if self.max_edit_distance < 1:
            raise ValueError("max_edit_distance must be >= 1")
        if self.max_suggestions < 1:
            raise ValueError("max_suggestions must be >= 1")


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance over Unicode scalar values."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,          # deletion
                    current[j - 1] + 1,       # insertion
                    previous[j - 1] + (ch_a != ch_b),  # substitution
                )
            )
        previous = current
    return previous[-1]


def _best_correction(index: Index, term: str, max_distance: int) -> Optional[str]:
    # Ranked by (distance asc, df desc, term asc); length pruning keeps the
    # vocabulary scan cheap on desk-scale indexes.
    best: Optional[tuple[int, int, str]] = None
    for candidate, df in index.vocab():
        if abs(len(candidate) - len(term)) > max_distance:
            continue
        distance = edit_distance(term, candidate)
        if distance > max_distance:
            continue
        key = (distance, -df, candidate)
        if best is None or key < best:
            best = key
    return best[2] if best else None


def did_you_mean(index: Index, query_terms: Sequence[str],
                 config: Optional[SuggestConfig] = None) -> Optional[str]:
    """Correct out-of-vocabulary terms in an analyzed query.

    Terms already in the vocabulary are kept verbatim; each term with no
    matching document is replaced by the closest vocabulary term within
    the edit-distance bound. Returns the corrected query string, or None
    when nothing could be corrected.
    """
    config = config or SuggestConfig()
    corrected_any = False
    out: list[str] = []
    for term in query_terms:
        if index.doc_frequency(term) > 0:
            out.append(term)
            continue
        replacement = _best_correction(index, term, config.max_edit_distance)
        if replacement is None:
            out.append(term)
        else:
            out.append(replacement)
            corrected_any = True
    return " ".join(out) if corrected_any else None


def autosuggest(index: Index, prefix: str, k: int = 10,
                config: Optional[SuggestConfig] = None) -> list[str]:
    """Complete a prefix against the vocabulary.

    Matching is case-folded; results are ordered by document frequency
    descending, then term ascending, and capped at k. Prefixes shorter
    than min_prefix_length return nothing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    config = config or SuggestConfig()
    folded = prefix.lower()
    if len(folded) < config.min_prefix_length:
        return []
    matches = [(term, df) for term, df in index.vocab() if term.startswith(folded)]
    matches.sort(key=lambda item: (-item[1], item[0]))
    return [term for term, _df in matches[:k]]
