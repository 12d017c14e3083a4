"use strict";
// Snippet handling. The server returns snippets where match terms are
// wrapped in a whitelisted tag pair and everything else arrives
// entity-escaped. The renderer never trusts that: it splits on the exact
// tag strings, decodes entities, and inserts plain text nodes, so any
// markup that slips through still ends up inert.
Object.defineProperty(exports, "__esModule", { value: true });
exports.decodeEntities = decodeEntities;
exports.splitSnippet = splitSnippet;
exports.renderSnippet = renderSnippet;
const NAMED_ENTITIES = {
    amp: "&",
    lt: "<",
    gt: ">",
    quot: '"',
    apos: "'",
    nbsp: " ",
};
function decodeEntities(value) {
    return value.replace(/&(#x?[0-9a-fA-F]+|[a-zA-Z]+);/g, (whole, body) => {
        if (body.startsWith("#x") || body.startsWith("#X")) {
            const code = Number.parseInt(body.slice(2), 16);
            return Number.isNaN(code) ? whole : String.fromCodePoint(code);
        }
        if (body.startsWith("#")) {
            const code = Number.parseInt(body.slice(1), 10);
            return Number.isNaN(code) ? whole : String.fromCodePoint(code);
        }
        return NAMED_ENTITIES[body.toLowerCase()] ?? whole;
    });
}
function splitSnippet(snippet, preTag = "<em>", postTag = "</em>") {
    const segments = [];
    let rest = snippet;
    while (rest.length > 0) {
        const open = rest.indexOf(preTag);
        if (open < 0) {
            segments.push({ kind: "text", value: rest });
            break;
        }
        const close = rest.indexOf(postTag, open + preTag.length);
        if (close < 0) {
            // Unbalanced tag: treat the remainder as literal text.
            segments.push({ kind: "text", value: rest });
            break;
        }
        if (open > 0) {
            segments.push({ kind: "text", value: rest.slice(0, open) });
        }
        segments.push({ kind: "mark", value: rest.slice(open + preTag.length, close) });
        rest = rest.slice(close + postTag.length);
    }
    return segments.map(({ kind, value }) => ({ kind, value: decodeEntities(value) }));
}
/** Builds DOM nodes for a snippet: text nodes plus <em> for matches. */
function renderSnippet(doc, snippet) {
    const fragment = doc.createDocumentFragment();
    for (const segment of splitSnippet(snippet)) {
        if (segment.kind === "mark") {
            const em = doc.createElement("em");
            em.textContent = segment.value;
            fragment.appendChild(em);
        }
        else {
            fragment.appendChild(doc.createTextNode(segment.value));
        }
    }
    return fragment;
}
