// DOM wiring: binds the search box, suggestion dropdown, results list,
// did-you-mean banner, and pagination controls to the API client.

import { ApiClient, MalformedResponse, SearchResponse } from "./api";
import { debounce, Scheduler, realScheduler } from "./debounce";
import { renderSnippet } from "./snippet";
import {
  UiState,
  applySearch,
  applySuggestions,
  canGoNext,
  canGoPrevious,
  clearSuggestions,
  initialState,
  moveSelection,
  nextSearchSeq,
  nextSuggestSeq,
  selectedTerm,
  totalPages,
} from "./state";

export const MIN_PREFIX_LENGTH = 2;
export const DEBOUNCE_MS = 150;
export const SUGGESTION_COUNT = 10;

const FALLBACK_MESSAGES: Record<string, string> = {
  didYouMean: "Kan jechuu barbaaddan kanadhaa?",
  noResults: "Bu'aan hin argamne.",
};

export interface AppOptions {
  apiBase?: string;
  pageSize?: number;
  debounceMs?: number;
  scheduler?: Scheduler;
}

export interface App {
  state: UiState;
  runSearch(query: string, page: number): Promise<void>;
  suggestNow(prefix: string): Promise<void>;
  messagesReady: Promise<void>;
}

function requireElement<T extends HTMLElement>(doc: Document, id: string): T {
  const el = doc.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

export function initApp(doc: Document, options: AppOptions = {}): App {
  const api = new ApiClient(options.apiBase ?? "");
  const state = initialState(options.pageSize ?? 10);
  const scheduler = options.scheduler ?? realScheduler;
  let messages = { ...FALLBACK_MESSAGES };

  const form = requireElement<HTMLFormElement>(doc, "search-form");
  const input = requireElement<HTMLInputElement>(doc, "query");
  const dropdown = requireElement<HTMLUListElement>(doc, "suggestions");
  const banner = requireElement<HTMLDivElement>(doc, "did-you-mean");
  const status = requireElement<HTMLDivElement>(doc, "status");
  const results = requireElement<HTMLOListElement>(doc, "results");
  const previousButton = requireElement<HTMLButtonElement>(doc, "prev");
  const nextButton = requireElement<HTMLButtonElement>(doc, "next");
  const pageInfo = requireElement<HTMLSpanElement>(doc, "page-info");

  const messagesReady = api
    .health()
    .then((health) => {
      messages = { ...FALLBACK_MESSAGES, ...health.messages };
    })
    .catch(() => {
      // Server unreachable at startup: keep the fallback copy.
    });

  function renderDropdown(): void {
    dropdown.textContent = "";
    if (state.suggestions.length === 0) {
      dropdown.hidden = true;
      return;
    }
    state.suggestions.forEach((term, index) => {
      const item = doc.createElement("li");
      item.textContent = term;
      if (index === state.selectedSuggestion) item.classList.add("selected");
      item.addEventListener("mousedown", (event) => {
        event.preventDefault();
        input.value = term;
        clearSuggestions(state);
        renderDropdown();
        void runSearch(term, 1);
      });
      dropdown.appendChild(item);
    });
    dropdown.hidden = false;
  }

  function renderBanner(response: SearchResponse): void {
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

  function renderResults(response: SearchResponse): void {
    results.textContent = "";
    status.classList.remove("error");
    if (response.total === 0) {
      status.textContent = messages.noResults;
    } else {
      status.textContent = `${response.total}`;
    }
    for (const hit of response.hits) {
      const item = doc.createElement("li");
      const heading = doc.createElement("div");
      heading.className = "hit-id";
      heading.textContent = `${hit.id}  (${hit.score.toFixed(4)})`;
      const body = doc.createElement("div");
      body.className = "hit-snippet";
      body.appendChild(renderSnippet(doc, hit.snippet));
      item.appendChild(heading);
      item.appendChild(body);
      results.appendChild(item);
    }
    const pages = totalPages(response);
    pageInfo.textContent = pages === 0 ? "" : `${response.page} / ${pages}`;
    previousButton.disabled = !canGoPrevious(state);
    nextButton.disabled = !canGoNext(state);
  }

  function showError(message: string): void {
    // Previous results stay on screen; only the status line changes.
    status.textContent = message;
    status.classList.add("error");
  }

  async function runSearch(query: string, page: number): Promise<void> {
    if (!query.trim()) return;
    const seq = nextSearchSeq(state);
    clearSuggestions(state);
    renderDropdown();
    try {
      const response = await api.search(query, page, state.size);
      if (!applySearch(state, seq, query, response)) return;
      renderBanner(response);
      renderResults(response);
    } catch (error) {
      if (seq !== state.searchSeq) return;
      showError(error instanceof MalformedResponse
        ? "Malformed server response"
        : "Search failed");
    }
  }

  async function suggestNow(prefix: string): Promise<void> {
    if (prefix.length < MIN_PREFIX_LENGTH) {
      clearSuggestions(state);
      renderDropdown();
      return;
    }
    const seq = nextSuggestSeq(state);
    try {
      const suggestions = await api.suggest(prefix, SUGGESTION_COUNT);
      if (applySuggestions(state, seq, suggestions)) renderDropdown();
    } catch {
      if (seq === state.suggestSeq) {
        clearSuggestions(state);
        renderDropdown();
      }
    }
  }

  const debouncedSuggest = debounce(
    (prefix: string) => void suggestNow(prefix),
    options.debounceMs ?? DEBOUNCE_MS,
    scheduler,
  );

  input.addEventListener("input", () => {
    debouncedSuggest(input.value.trim());
  });

  input.addEventListener("keydown", (event: KeyboardEvent) => {
    if (event.key === "ArrowDown") {
      event.preventDefault();
      moveSelection(state, 1);
      renderDropdown();
    } else if (event.key === "ArrowUp") {
      event.preventDefault();
      moveSelection(state, -1);
      renderDropdown();
    } else if (event.key === "Enter") {
      const term = selectedTerm(state);
      if (term !== null) {
        event.preventDefault();
        input.value = term;
        clearSuggestions(state);
        renderDropdown();
      }
    } else if (event.key === "Escape") {
      clearSuggestions(state);
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
    if (response && canGoPrevious(state)) {
      void runSearch(state.query, response.page - 1);
    }
  });

  nextButton.addEventListener("click", () => {
    const response = state.lastResponse;
    if (response && canGoNext(state)) {
      void runSearch(state.query, response.page + 1);
    }
  });

  previousButton.disabled = true;
  nextButton.disabled = true;

  return { state, runSearch, suggestNow, messagesReady };
}
