"use strict";
// Typed client for the search server's JSON API. Responses are validated
// structurally so a malformed payload surfaces as an error instead of
// rendering garbage.
Object.defineProperty(exports, "__esModule", { value: true });
exports.ApiClient = exports.MalformedResponse = void 0;
exports.validateSearchResponse = validateSearchResponse;
class MalformedResponse extends Error {
}
exports.MalformedResponse = MalformedResponse;
function isHit(value) {
    if (typeof value !== "object" || value === null)
        return false;
    const hit = value;
    return (typeof hit.id === "string" &&
        typeof hit.score === "number" &&
        typeof hit.snippet === "string");
}
function validateSearchResponse(payload) {
    if (typeof payload !== "object" || payload === null) {
        throw new MalformedResponse("response is not an object");
    }
    const body = payload;
    if (typeof body.total !== "number" ||
        typeof body.page !== "number" ||
        typeof body.size !== "number" ||
        !(body.didYouMean === null || typeof body.didYouMean === "string") ||
        !Array.isArray(body.hits) ||
        !body.hits.every(isHit)) {
        throw new MalformedResponse("response does not match the search schema");
    }
    return body;
}
class ApiClient {
    constructor(base = "") {
        this.base = base;
    }
    async getJson(path) {
        const response = await fetch(this.base + path);
        if (!response.ok) {
            throw new Error(`request failed with status ${response.status}`);
        }
        return response.json();
    }
    async search(query, page, size) {
        const params = new URLSearchParams({
            q: query,
            page: String(page),
            size: String(size),
        });
        return validateSearchResponse(await this.getJson(`/api/search?${params}`));
    }
    async suggest(prefix, k) {
        const params = new URLSearchParams({ prefix, k: String(k) });
        const payload = (await this.getJson(`/api/suggest?${params}`));
        if (!Array.isArray(payload.suggestions)) {
            throw new MalformedResponse("suggest response lacks a suggestions array");
        }
        return payload.suggestions.filter((s) => typeof s === "string");
    }
    async health() {
        return (await this.getJson("/api/health"));
    }
}
exports.ApiClient = ApiClient;
