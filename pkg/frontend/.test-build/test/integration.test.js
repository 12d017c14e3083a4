"use strict";
// End-to-end UI contract against a live server on the sample index:
// suggestions as you type, did-you-mean banner with click-to-correct,
// snippet escaping, pagination walk.
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_child_process_1 = require("node:child_process");
const promises_1 = require("node:fs/promises");
const node_fs_1 = require("node:fs");
const node_net_1 = __importDefault(require("node:net"));
const node_os_1 = __importDefault(require("node:os"));
const node_path_1 = __importDefault(require("node:path"));
const node_test_1 = require("node:test");
const jsdom_1 = require("jsdom");
const ui_1 = require("../src/ui");
const FRONTEND = node_path_1.default.resolve(__dirname, "../..");
const REPO = node_path_1.default.resolve(FRONTEND, "..");
const DATA = node_path_1.default.join(REPO, "data");
const HTML = (0, node_fs_1.readFileSync)(node_path_1.default.join(FRONTEND, "index.html"), "utf-8");
let server = null;
let serverExited = null;
let base = "";
function sleep(ms) {
    return new Promise((resolve) => setTimeout(resolve, ms));
}
async function waitFor(predicate, timeoutMs = 8000) {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        if (predicate())
            return;
        await sleep(25);
    }
    throw new Error("condition not met in time");
}
function freePort() {
    return new Promise((resolve, reject) => {
        const probe = node_net_1.default.createServer();
        probe.listen(0, "127.0.0.1", () => {
            const address = probe.address();
            if (address && typeof address === "object") {
                const port = address.port;
                probe.close(() => resolve(port));
            }
            else {
                probe.close(() => reject(new Error("no address")));
            }
        });
    });
}
(0, node_test_1.before)(async () => {
    const tmp = await (0, promises_1.mkdtemp)(node_path_1.default.join(node_os_1.default.tmpdir(), "airui-"));
    const corpus = node_path_1.default.join(tmp, "corpus");
    await (0, promises_1.mkdir)(corpus);
    for (const name of await (0, promises_1.readdir)(node_path_1.default.join(DATA, "corpus"))) {
        await (0, promises_1.copyFile)(node_path_1.default.join(DATA, "corpus", name), node_path_1.default.join(corpus, name));
    }
    // One hostile document to prove stored markup stays inert end to end.
    await (0, promises_1.writeFile)(node_path_1.default.join(corpus, "d99.txt"), "<script>alert('x')</script> aadaa keessatti <b>jabaa</b>\n", "utf-8");
    const indexPath = node_path_1.default.join(tmp, "ui.air");
    const analyzerFlags = [
        "--stopwords", node_path_1.default.join(DATA, "stopwords_ao.txt"),
        "--synonyms", node_path_1.default.join(DATA, "synonyms_ao.txt"),
    ];
    const build = (0, node_child_process_1.spawnSync)("air", ["index", "--corpus", corpus, "--out", indexPath, ...analyzerFlags], { encoding: "utf-8" });
    strict_1.default.equal(build.status, 0, build.stderr);
    const port = await freePort();
    base = `http://127.0.0.1:${port}`;
    server = (0, node_child_process_1.spawn)("air", ["serve", "--index", indexPath, "--port", String(port), ...analyzerFlags], { stdio: ["ignore", "ignore", "pipe"] });
    serverExited = new Promise((resolve) => server.once("exit", () => resolve()));
    const deadline = Date.now() + 15000;
    for (;;) {
        try {
            const response = await fetch(`${base}/api/health`);
            if (response.ok)
                break;
        }
        catch {
            // not up yet
        }
        if (Date.now() > deadline)
            throw new Error("server did not start");
        await sleep(100);
    }
});
(0, node_test_1.after)(async () => {
    if (server) {
        server.kill("SIGINT");
        await Promise.race([serverExited, sleep(5000)]);
    }
});
async function openPage(pageSize = 10) {
    const dom = new jsdom_1.JSDOM(HTML, { url: base + "/" });
    const app = (0, ui_1.initApp)(dom.window.document, { apiBase: base, pageSize });
    await app.messagesReady;
    return { doc: dom.window.document, app, window: dom.window };
}
function typeInto(page, value) {
    const input = page.doc.getElementById("query");
    input.value = value;
    input.dispatchEvent(new page.window.Event("input", { bubbles: true }));
}
function submitSearch(page, value) {
    const input = page.doc.getElementById("query");
    input.value = value;
    page.doc.getElementById("search-form").dispatchEvent(new page.window.Event("submit", { bubbles: true, cancelable: true }));
}
function dropdownItems(page) {
    return [...page.doc.querySelectorAll("#suggestions li")].map((item) => item.textContent ?? "");
}
function hitIds(page) {
    return [...page.doc.querySelectorAll("#results .hit-id")].map((el) => (el.textContent ?? "").split(/\s+/)[0]);
}
(0, node_test_1.test)("typing renders the server's suggestion list verbatim after debounce", async () => {
    const page = await openPage();
    typeInto(page, "oro");
    await waitFor(() => dropdownItems(page).length > 0);
    const reply = await fetch(`${base}/api/suggest?prefix=oro&k=10`);
    const expected = (await reply.json());
    strict_1.default.ok(expected.suggestions.length > 0);
    strict_1.default.deepEqual(dropdownItems(page), expected.suggestions);
});
(0, node_test_1.test)("fast typing renders only the final prefix's suggestions", async () => {
    const page = await openPage();
    typeInto(page, "oro");
    await sleep(20);
    typeInto(page, "orom");
    await sleep(400);
    const reply = await fetch(`${base}/api/suggest?prefix=orom&k=10`);
    const expected = (await reply.json());
    strict_1.default.deepEqual(dropdownItems(page), expected.suggestions);
});
(0, node_test_1.test)("keyboard selection inserts the highlighted term", async () => {
    const page = await openPage();
    typeInto(page, "oro");
    await waitFor(() => dropdownItems(page).length > 0);
    const first = dropdownItems(page)[0];
    const input = page.doc.getElementById("query");
    input.dispatchEvent(new page.window.KeyboardEvent("keydown", { key: "ArrowDown" }));
    input.dispatchEvent(new page.window.KeyboardEvent("keydown", { key: "Enter" }));
    strict_1.default.equal(input.value, first);
    strict_1.default.equal(page.doc.getElementById("suggestions").hidden, true);
});
(0, node_test_1.test)("misspelled query shows the did-you-mean banner; clicking re-issues it", async () => {
    const page = await openPage();
    submitSearch(page, "ormiya");
    const banner = page.doc.getElementById("did-you-mean");
    await waitFor(() => !banner.hidden);
    strict_1.default.ok(banner.textContent.startsWith("Kan jechuu barbaaddan kanadhaa?"));
    const term = banner.querySelector("button.dym-term");
    strict_1.default.equal(term.textContent, "oromiyaa");
    term.dispatchEvent(new page.window.MouseEvent("click", { bubbles: true }));
    await waitFor(() => page.app.state.query === "oromiyaa");
    await waitFor(() => banner.hidden === true); // corrected query is in vocabulary
    const input = page.doc.getElementById("query");
    strict_1.default.equal(input.value, "oromiyaa");
    strict_1.default.ok(page.app.state.lastResponse.total > 0);
});
(0, node_test_1.test)("snippets render emphasis and keep stored markup inert", async () => {
    const page = await openPage();
    submitSearch(page, "aadaa");
    await waitFor(() => hitIds(page).length > 0);
    strict_1.default.ok(hitIds(page).includes("d99"));
    const results = page.doc.getElementById("results");
    strict_1.default.ok(results.querySelectorAll("em").length > 0);
    strict_1.default.equal(results.querySelectorAll("script").length, 0);
    strict_1.default.equal(results.querySelectorAll("b").length, 0);
    strict_1.default.ok(results.textContent.includes("<script>alert('x')</script>"));
});
(0, node_test_1.test)("pagination walks every hit exactly once and disables at bounds", async () => {
    const page = await openPage(2);
    const query = "aadaa uummata oromoo";
    const reply = await fetch(`${base}/api/search?q=${encodeURIComponent(query)}&size=100`);
    const full = (await reply.json());
    const expected = full.hits.map((hit) => hit.id);
    strict_1.default.ok(expected.length > 3);
    submitSearch(page, query);
    await waitFor(() => hitIds(page).length > 0);
    const previousButton = page.doc.getElementById("prev");
    const nextButton = page.doc.getElementById("next");
    strict_1.default.equal(previousButton.disabled, true);
    const walked = [...hitIds(page)];
    while (!nextButton.disabled) {
        const pageBefore = page.app.state.lastResponse.page;
        nextButton.dispatchEvent(new page.window.MouseEvent("click", { bubbles: true }));
        await waitFor(() => page.app.state.lastResponse.page === pageBefore + 1);
        walked.push(...hitIds(page));
    }
    strict_1.default.deepEqual(walked, expected);
    strict_1.default.equal(new Set(walked).size, walked.length);
    strict_1.default.equal(nextButton.disabled, true);
    strict_1.default.equal(previousButton.disabled, false);
});
(0, node_test_1.test)("zero results disable both pagination buttons and show the empty state", async () => {
    const page = await openPage();
    submitSearch(page, "zzzzqqqq");
    await waitFor(() => page.app.state.lastResponse !== null);
    strict_1.default.equal(page.doc.getElementById("prev").disabled, true);
    strict_1.default.equal(page.doc.getElementById("next").disabled, true);
    strict_1.default.equal(hitIds(page).length, 0);
    const status = page.doc.getElementById("status");
    strict_1.default.equal(status.textContent, "Bu'aan hin argamne.");
});
