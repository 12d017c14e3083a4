// Pure UI state transitions. No DOM here: everything is a plain function
// over immutable-ish state, which keeps the invariants testable.
//
// Invariants maintained:
// - at most one suggest response is ever rendered per issued sequence
//   number, and stale responses (seq < latest issued) are discarded;
// - the rendered results always come from the most recent completed
//   search (an older in-flight search can never clobber a newer one).

import type { SearchResponse } from "./api";

export interface UiState {
  query: string;
  size: number;
  suggestSeq: number;
  searchSeq: number;
  suggestions: string[];
  selectedSuggestion: number; // -1 = none
  lastResponse: SearchResponse | null;
}

export function initialState(size = 10): UiState {
  return {
    query: "",
    size,
    suggestSeq: 0,
    searchSeq: 0,
    suggestions: [],
    selectedSuggestion: -1,
    lastResponse: null,
  };
}

export function nextSuggestSeq(state: UiState): number {
  state.suggestSeq += 1;
  return state.suggestSeq;
}

/** Returns true when the response is current and was applied. */
export function applySuggestions(state: UiState, seq: number,
                                 suggestions: string[]): boolean {
  if (seq !== state.suggestSeq) return false; // stale response, discard
  state.suggestions = suggestions;
  state.selectedSuggestion = -1;
  return true;
}

export function clearSuggestions(state: UiState): void {
  state.suggestions = [];
  state.selectedSuggestion = -1;
}

export function moveSelection(state: UiState, delta: number): void {
  if (state.suggestions.length === 0) {
    state.selectedSuggestion = -1;
    return;
  }
  const count = state.suggestions.length;
  const next = state.selectedSuggestion + delta;
  state.selectedSuggestion = ((next % count) + count) % count;
}

export function selectedTerm(state: UiState): string | null {
  if (state.selectedSuggestion < 0) return null;
  return state.suggestions[state.selectedSuggestion] ?? null;
}

export function nextSearchSeq(state: UiState): number {
  state.searchSeq += 1;
  return state.searchSeq;
}

/** Returns true when the response is current and was applied. */
export function applySearch(state: UiState, seq: number, query: string,
                            response: SearchResponse): boolean {
  if (seq !== state.searchSeq) return false;
  state.query = query;
  state.lastResponse = response;
  return true;
}

export function totalPages(response: SearchResponse): number {
  if (response.total === 0) return 0;
  return Math.ceil(response.total / response.size);
}

export function canGoPrevious(state: UiState): boolean {
  const response = state.lastResponse;
  return response !== null && totalPages(response) > 0 && response.page > 1;
}

export function canGoNext(state: UiState): boolean {
  const response = state.lastResponse;
  return response !== null && response.page < totalPages(response);
}
