// Typed client for the search server's JSON API. Responses are validated
// structurally so a malformed payload surfaces as an error instead of
// rendering garbage.

export interface SearchHit {
  id: string;
  score: number;
  snippet: string;
}

export interface SearchResponse {
  total: number;
  page: number;
  size: number;
  didYouMean: string | null;
  hits: SearchHit[];
}

export interface HealthResponse {
  status: string;
  docs: number;
  version: string;
  messages: Record<string, string>;
}

export class MalformedResponse extends Error {}

function isHit(value: unknown): value is SearchHit {
  if (typeof value !== "object" || value === null) return false;
  const hit = value as Record<string, unknown>;
  return (
    typeof hit.id === "string" &&
    typeof hit.score === "number" &&
    typeof hit.snippet === "string"
  );
}

export function validateSearchResponse(payload: unknown): SearchResponse {
  if (typeof payload !== "object" || payload === null) {
    throw new MalformedResponse("response is not an object");
  }
  const body = payload as Record<string, unknown>;
  if (
    typeof body.total !== "number" ||
    typeof body.page !== "number" ||
    typeof body.size !== "number" ||
    !(body.didYouMean === null || typeof body.didYouMean === "string") ||
    !Array.isArray(body.hits) ||
    !body.hits.every(isHit)
  ) {
    throw new MalformedResponse("response does not match the search schema");
  }
  return body as unknown as SearchResponse;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async getJson(path: string): Promise<unknown> {
    const response = await fetch(this.base + path);
    if (!response.ok) {
      throw new Error(`request failed with status ${response.status}`);
    }
    return response.json();
  }

  async search(query: string, page: number, size: number): Promise<SearchResponse> {
    const params = new URLSearchParams({
      q: query,
      page: String(page),
      size: String(size),
    });
    return validateSearchResponse(await this.getJson(`/api/search?${params}`));
  }

  async suggest(prefix: string, k: number): Promise<string[]> {
    const params = new URLSearchParams({ prefix, k: String(k) });
    const payload = (await this.getJson(`/api/suggest?${params}`)) as {
      suggestions?: unknown;
    };
    if (!Array.isArray(payload.suggestions)) {
      throw new MalformedResponse("suggest response lacks a suggestions array");
    }
    return payload.suggestions.filter((s): s is string => typeof s === "string");
  }

  async health(): Promise<HealthResponse> {
    return (await this.getJson("/api/health")) as HealthResponse;
  }
}
