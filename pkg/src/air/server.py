"""HTTP JSON API over a committed index.

Endpoints:

    GET /api/search?q=&page=&size=   ranked hits with snippets
    GET /api/suggest?prefix=&k=      prefix autosuggest
    GET /api/health                  status, document count, version, UI strings
    GET /                            static assets (when configured)

All responses are UTF-8 JSON with CORS enabled for local development. The
server never mutates the index; a shared immutable snapshot serves every
request, so concurrent requests are trivially safe. Snippet text is
entity-escaped except for the configured highlight tags, so stored
documents cannot inject markup into clients.
"""

from __future__ import annotations

import html
import json
import mimetypes
import posixpath
import threading
from dataclasses import dataclass, field, replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlsplit

from air import __version__
from air.analysis import AnalyzerConfig
from air.index import Index
from air.search import SearchOptions, search
from air.suggest import SuggestConfig, autosuggest

DEFAULT_MESSAGES = {
    # Did-you-mean prompt shown by the UI, in Afaan Oromo.
    "didYouMean": "Kan jechuu barbaaddan kanadhaa?",
    "noResults": "Bu'aan hin argamne.",
}

MAX_PAGE_SIZE = 100


@dataclass
class ServerConfig:
    port: int = 8080
    host: str = "127.0.0.1"
    static_dir: Optional[str] = None
    messages: dict = field(default_factory=lambda: dict(DEFAULT_MESSAGES))

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range")


class SearchApp:
    """Request handling logic, independent of the HTTP plumbing.

    Holds the current index snapshot; swap_index replaces it atomically
    (assignment is atomic, and requests each read the reference once).
    """

    def __init__(self, index: Index, analyzer_config: AnalyzerConfig,
                 options: Optional[SearchOptions] = None,
                 suggest_config: Optional[SuggestConfig] = None,
                 messages: Optional[dict] = None):
        self._index = index
        self.analyzer_config = analyzer_config
        self.options = options or SearchOptions()
        self.suggest_config = suggest_config or SuggestConfig()
        self.messages = dict(DEFAULT_MESSAGES)
        if messages:
            self.messages.update(messages)

    @property
    def index(self) -> Index:
        return self._index

    def swap_index(self, index: Index) -> None:
        self._index = index

    def api_search(self, params: dict[str, list[str]]) -> tuple[int, dict]:
        q = params.get("q", [""])[0]
        if not q.strip():
            return 400, {"error": "missing query parameter q"}
        try:
            page = int(params.get("page", ["1"])[0])
            size = int(params.get("size", ["10"])[0])
        except ValueError:
            return 400, {"error": "page and size must be integers"}
        if page < 1:
            return 400, {"error": "page must be >= 1"}
        if not 1 <= size <= MAX_PAGE_SIZE:
            return 400, {"error": f"size must be between 1 and {MAX_PAGE_SIZE}"}

        options = replace(self.options, page=page, size=size, escape=html.escape)
        results = search(self.index, q, options, self.analyzer_config,
                         self.suggest_config)
        return 200, {
            "total": results.total,
            "page": results.page,
            "size": results.size,
            "didYouMean": results.did_you_mean,
            "hits": [
                {"id": hit.doc, "score": hit.score, "snippet": hit.snippet}
                for hit in results.hits
            ],
        }

    def api_suggest(self, params: dict[str, list[str]]) -> tuple[int, dict]:
        prefix = params.get("prefix", [""])[0]
        try:
            k = int(params.get("k", ["10"])[0])
        except ValueError:
            return 400, {"error": "k must be an integer"}
        if k < 1:
            return 400, {"error": "k must be >= 1"}
        terms = autosuggest(self.index, prefix, k, self.suggest_config)
        return 200, {"suggestions": terms}

    def api_health(self) -> tuple[int, dict]:
        return 200, {
            "status": "ok",
            "docs": self.index.doc_count,
            "version": __version__,
            "messages": self.messages,
        }


class _Handler(BaseHTTPRequestHandler):
    app: SearchApp
    static_dir: Optional[Path] = None
    quiet = False

    def do_GET(self):  # noqa: N802 (http.server API)
        parts = urlsplit(self.path)
        params = parse_qs(parts.query)
        try:
            if parts.path == "/api/search":
                status, payload = self.app.api_search(params)
            elif parts.path == "/api/suggest":
                status, payload = self.app.api_suggest(params)
            elif parts.path == "/api/health":
                status, payload = self.app.api_health()
            elif not parts.path.startswith("/api/"):
                self._serve_static(parts.path)
                return
            else:
                status, payload = 404, {"error": "not found"}
        except Exception:  # pragma: no cover - defensive
            status, payload = 500, {"error": "internal error"}
        self._send_json(status, payload)

    def do_OPTIONS(self):  # noqa: N802
        self.send_response(204)
        self._cors_headers()
        self.end_headers()

    def _cors_headers(self):
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _send_json(self, status: int, payload: dict):
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self._cors_headers()
        self.end_headers()
        self.wfile.write(body)

    def _serve_static(self, url_path: str):
        if self.static_dir is None:
            self._send_json(404, {"error": "not found"})
            return
        clean = posixpath.normpath(url_path.lstrip("/")) or "."
        if clean.startswith(".."):
            self._send_json(404, {"error": "not found"})
            return
        target = self.static_dir / clean
        if target.is_dir():
            target = target / "index.html"
        resolved = target.resolve()
        if not resolved.is_file() or self.static_dir not in resolved.parents:
            self._send_json(404, {"error": "not found"})
            return
        content_type = mimetypes.guess_type(str(resolved))[0] or "application/octet-stream"
        body = resolved.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self._cors_headers()
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, format, *args):  # noqa: A002
        if not self.quiet:
            super().log_message(format, *args)


def make_server(app: SearchApp, config: ServerConfig,
                quiet: bool = False) -> ThreadingHTTPServer:
    """Bind the HTTP server; raises OSError when the port is busy."""
    handler = type("BoundHandler", (_Handler,), {
        "app": app,
        "static_dir": Path(config.static_dir).resolve() if config.static_dir else None,
        "quiet": quiet,
    })
    return ThreadingHTTPServer((config.host, config.port), handler)


def run_server(app: SearchApp, config: ServerConfig) -> None:
    """Serve until interrupted; Ctrl-C shuts down cleanly."""
    httpd = make_server(app, config)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def serve_in_thread(app: SearchApp, config: ServerConfig
                    ) -> tuple[ThreadingHTTPServer, threading.Thread]:
    """Start the server on a daemon thread (used by tests and tooling)."""
    httpd = make_server(app, config, quiet=True)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return httpd, thread
