"use strict";
// Pure UI state transitions. No DOM here: everything is a plain function
// over immutable-ish state, which keeps the invariants testable.
//
// Invariants maintained:
// - at most one suggest response is ever rendered per issued sequence
//   number, and stale responses (seq < latest issued) are discarded;
// - the rendered results always come from the most recent completed
//   search (an older in-flight search can never clobber a newer one).
Object.defineProperty(exports, "__esModule", { value: true });
exports.initialState = initialState;
exports.nextSuggestSeq = nextSuggestSeq;
exports.applySuggestions = applySuggestions;
exports.clearSuggestions = clearSuggestions;
exports.moveSelection = moveSelection;
exports.selectedTerm = selectedTerm;
exports.nextSearchSeq = nextSearchSeq;
exports.applySearch = applySearch;
exports.totalPages = totalPages;
exports.canGoPrevious = canGoPrevious;
exports.canGoNext = canGoNext;
function initialState(size = 10) {
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
function nextSuggestSeq(state) {
    state.suggestSeq += 1;
    return state.suggestSeq;
}
/** Returns true when the response is current and was applied. */
function applySuggestions(state, seq, suggestions) {
    if (seq !== state.suggestSeq)
        return false; // stale response, discard
    state.suggestions = suggestions;
    state.selectedSuggestion = -1;
    return true;
}
function clearSuggestions(state) {
    state.suggestions = [];
    state.selectedSuggestion = -1;
}
function moveSelection(state, delta) {
    if (state.suggestions.length === 0) {
        state.selectedSuggestion = -1;
        return;
    }
    const count = state.suggestions.length;
    const next = state.selectedSuggestion + delta;
    state.selectedSuggestion = ((next % count) + count) % count;
}
function selectedTerm(state) {
    if (state.selectedSuggestion < 0)
        return null;
    return state.suggestions[state.selectedSuggestion] ?? null;
}
function nextSearchSeq(state) {
    state.searchSeq += 1;
    return state.searchSeq;
}
/** Returns true when the response is current and was applied. */
function applySearch(state, seq, query, response) {
    if (seq !== state.searchSeq)
        return false;
    state.query = query;
    state.lastResponse = response;
    return true;
}
function totalPages(response) {
    if (response.total === 0)
        return 0;
    return Math.ceil(response.total / response.size);
}
function canGoPrevious(state) {
    const response = state.lastResponse;
    return response !== null && totalPages(response) > 0 && response.page > 1;
}
function canGoNext(state) {
    const response = state.lastResponse;
    return response !== null && response.page < totalPages(response);
}
