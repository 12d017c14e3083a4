"use strict";
// DOM wiring: binds the search box, suggestion dropdown, results list,
// did-you-mean banner, and pagination controls to the API client.
Object.defineProperty(exports, "__esModule", { value: true });
exports.SUGGESTION_COUNT = exports.DEBOUNCE_MS = exports.MIN_PREFIX_LENGTH = void 0;
exports.initApp = initApp;
const api_1 = require("./api");
const debounce_1 = require("./debounce");
const snippet_1 = require("./snippet");
const state_1 = require("./state");
exports.MIN_PREFIX_LENGTH = 2;
exports.DEBOUNCE_MS = 150;
exports.SUGGESTION_COUNT = 10;
const FALLBACK_MESSAGES = {
    didYouMean: "Kan jechuu barbaaddan kanadhaa?",
    noResults: "Bu'aan hin argamne.",
};
function requireElement(doc, id) {
    const el = doc.getElementById(id);
    if (!el)
        throw new Error(`missing element #${id}`);
    return el;
}
function initApp(doc, options = {}) {
    const api = new api_1.ApiClient(options.apiBase ?? "");
    const state = (0, state_1.initialState)(options.pageSize ?? 10);
    const scheduler = options.scheduler ?? debounce_1.realScheduler;
    let messages = { ...FALLBACK_MESSAGES };
    const form = requireElement(doc, "search-form");
    const input = requireElement(doc, "query");
    const dropdown = requireElement(doc, "suggestions");
    const banner = requireElement(doc, "did-you-mean");
    const status = requireElement(doc, "status");
    const results = requireElement(doc, "results");
    const previousButton = requireElement(doc, "prev");
    const nextButton = requireElement(doc, "next");
    const pageInfo = requireElement(doc, "page-info");
    const messagesReady = api
        .health()
        .then((health) => {
        messages = { ...FALLBACK_MESSAGES, ...health.messages };
    })
        .catch(() => {
        // Server unreachable at startup: keep the fallback copy.
    });
    function renderDropdown() {
        dropdown.textContent = "";
        if (state.suggestions.length === 0) {
            dropdown.hidden = true;
            return;
        }
        state.suggestions.forEach((term, index) => {
            const item = doc.createElement("li");
            item.textContent = term;
            if (index === state.selectedSuggestion)
                item.classList.add("selected");
            item.addEventListener("mousedown", (event) => {
                event.preventDefault();
                input.value = term;
                (0, state_1.clearSuggestions)(state);
                renderDropdown();
                void runSearch(term, 1);
            });
            dropdown.appendChild(item);
        });
        dropdown.hidden = false;
    }
    function renderBanner(response) {
        banner.textContent = "";
        if (!response.didYouMean) {
            banner.hidden = true;
            return;
        }
        const suggestion = response.didYouMean;
        banner.appendChild(doc.createTextNode(messages.didYouMean + " "));
        const link = doc.createElement("button");
        link.type = "button";
        link.className = "dym-term";
        link.textContent = suggestion;
        link.addEventListener("click", () => {
            input.value = suggestion;
            void runSearch(suggestion, 1);
        });
        banner.appendChild(link);
        banner.hidden = false;
    }
    function renderResults(response) {
        results.textContent = "";
        status.classList.remove("error");
        if (response.total === 0) {
            status.textContent = messages.noResults;
        }
        else {
            status.textContent = `${response.total}`;
        }
        for (const hit of response.hits) {
            const item = doc.createElement("li");
            const heading = doc.createElement("div");
            heading.className = "hit-id";
            heading.textContent = `${hit.id}  (${hit.score.toFixed(4)})`;
            const body = doc.createElement("div");
            body.className = "hit-snippet";
            body.appendChild((0, snippet_1.renderSnippet)(doc, hit.snippet));
            item.appendChild(heading);
            item.appendChild(body);
            results.appendChild(item);
        }
        const pages = (0, state_1.totalPages)(response);
        pageInfo.textContent = pages === 0 ? "" : `${response.page} / ${pages}`;
        previousButton.disabled = !(0, state_1.canGoPrevious)(state);
        nextButton.disabled = !(0, state_1.canGoNext)(state);
    }
    function showError(message) {
        // Previous results stay on screen; only the status line changes.
        status.textContent = message;
        status.classList.add("error");
    }
    async function runSearch(query, page) {
        if (!query.trim())
            return;
        const seq = (0, state_1.nextSearchSeq)(state);
        (0, state_1.clearSuggestions)(state);
        renderDropdown();
        try {
            const response = await api.search(query, page, state.size);
            if (!(0, state_1.applySearch)(state, seq, query, response))
                return;
            renderBanner(response);
            renderResults(response);
        }
        catch (error) {
            if (seq !== state.searchSeq)
                return;
            showError(error instanceof api_1.MalformedResponse
                ? "Malformed server response"
                : "Search failed");
        }
    }
    async function suggestNow(prefix) {
        if (prefix.length < exports.MIN_PREFIX_LENGTH) {
            (0, state_1.clearSuggestions)(state);
            renderDropdown();
            return;
        }
        const seq = (0, state_1.nextSuggestSeq)(state);
        try {
            const suggestions = await api.suggest(prefix, exports.SUGGESTION_COUNT);
            if ((0, state_1.applySuggestions)(state, seq, suggestions))
                renderDropdown();
        }
        catch {
            if (seq === state.suggestSeq) {
                (0, state_1.clearSuggestions)(state);
                renderDropdown();
            }
        }
    }
    const debouncedSuggest = (0, debounce_1.debounce)((prefix) => void suggestNow(prefix), options.debounceMs ?? exports.DEBOUNCE_MS, scheduler);
    input.addEventListener("input", () => {
        debouncedSuggest(input.value.trim());
    });
    input.addEventListener("keydown", (event) => {
        if (event.key === "ArrowDown") {
            event.preventDefault();
            (0, state_1.moveSelection)(state, 1);
            renderDropdown();
        }
        else if (event.key === "ArrowUp") {
            event.preventDefault();
            (0, state_1.moveSelection)(state, -1);
            renderDropdown();
        }
        else if (event.key === "Enter") {
            const term = (0, state_1.selectedTerm)(state);
            if (term !== null) {
                event.preventDefault();
                input.value = term;
                (0, state_1.clearSuggestions)(state);
                renderDropdown();
            }
        }
        else if (event.key === "Escape") {
            (0, state_1.clearSuggestions)(state);
            renderDropdown();
        }
    });
    form.addEventListener("submit", (event) => {
        event.preventDefault();
        debouncedSuggest.cancel();
        void runSearch(input.value, 1);
    });
    previousButton.addEventListener("click", () => {
        const response = state.lastResponse;
        if (response && (0, state_1.canGoPrevious)(state)) {
            void runSearch(state.query, response.page - 1);
        }
    });
    nextButton.addEventListener("click", () => {
        const response = state.lastResponse;
        if (response && (0, state_1.canGoNext)(state)) {
            void runSearch(state.query, response.page + 1);
        }
    });
    previousButton.disabled = true;
    nextButton.disabled = true;
    return { state, runSearch, suggestNow, messagesReady };
}
