"""Inverted index: build, commit, persist, serve.

An IndexBuilder accumulates documents, analyzing each in INDEX mode; commit
freezes everything into an immutable Index holding the postings, the stored
document texts, and the collection statistics ranking needs (N, avgdl,
per-document lengths). A committed Index never changes, so any number of
readers may share one.

The on-disk format is a single binary file: a header (magic "AOIR1",
format version, analyzer fingerprint, N, avgdl), the document table, the
term dictionary with postings, and a trailing SHA-256 content digest. All
integers are little-endian fixed width. See docs/INDEX_FORMAT.md for the
byte-exact layout.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from air.analysis import AnalyzeMode, AnalyzerConfig, analyze
from air.errors import (
    CommitAlreadyDone,
    CorruptIndex,
    DuplicateDocId,
    FormatVersionMismatch,
    IoFailure,
)

MAGIC = b"AOIR1"
FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class Posting:
    """Occurrences of one term in one document.

    ``occurrences`` holds (start, end) character offsets into the stored
    text, in document order; ``tf`` always equals their count.
    """

    doc: str
    tf: int
    occurrences: tuple[tuple[int, int], ...]


@dataclass(frozen=True, slots=True)
class StoredDoc:
    text: str
    length: int  # tokens after stopword removal


class Index:
    """Committed, immutable inverted index."""

    def __init__(
        self,
        docs: dict[str, StoredDoc],
        postings: dict[str, tuple[Posting, ...]],
        total_length: int,
        analyzer_fingerprint: str,
    ):
        self._docs = docs
        self._postings = postings
        self._total_length = total_length
        self.analyzer_fingerprint = analyzer_fingerprint

    @property
    def doc_count(self) -> int:
        return len(self._docs)

    @property
    def avgdl(self) -> float:
        if not self._docs:
            return 0.0
        return self._total_length / len(self._docs)

    @property
    def total_length(self) -> int:
        return self._total_length

    def doc_ids(self) -> list[str]:
        return sorted(self._docs)

    def has_doc(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def stored_text(self, doc_id: str) -> str:
        return self._docs[doc_id].text

    def doc_length(self, doc_id: str) -> int:
        return self._docs[doc_id].length

    def doc_frequency(self, term: str) -> int:
        """Number of documents containing the (already analyzed) term."""
        found = self._postings.get(term)
        return len(found) if found else 0

    def postings_for(self, term: str) -> tuple[Posting, ...]:
        return self._postings.get(term, ())

    def vocab(self) -> list[tuple[str, int]]:
        """All index terms with document frequencies, sorted by term."""
        return [(term, len(plist)) for term, plist in sorted(self._postings.items())]

    def terms(self) -> Iterator[str]:
        return iter(sorted(self._postings))


class IndexBuilder:
    """Single-writer accumulator; commit() yields the immutable Index."""

    def __init__(self, config: Optional[AnalyzerConfig] = None):
        self.config = config if config is not None else AnalyzerConfig()
        self._docs: dict[str, StoredDoc] = {}
        self._occurrences: dict[str, dict[str, list[tuple[int, int]]]] = {}
        self._committed = False

    def add_document(self, doc_id: str, text: str) -> None:
        if self._committed:
            raise CommitAlreadyDone("builder already committed")
        if doc_id in self._docs:
            raise DuplicateDocId(doc_id)
        tokens = analyze(text, self.config, AnalyzeMode.INDEX)
        self._docs[doc_id] = StoredDoc(text=text, length=len(tokens))
        for token in tokens:
            per_doc = self._occurrences.setdefault(token.term, {})
            per_doc.setdefault(doc_id, []).append((token.start, token.end))

    def commit(self) -> Index:
        if self._committed:
            raise CommitAlreadyDone("builder already committed")
        self._committed = True
        postings: dict[str, tuple[Posting, ...]] = {}
        for term, per_doc in self._occurrences.items():
            plist = tuple(
                Posting(doc=doc_id, tf=len(offsets), occurrences=tuple(offsets))
                for doc_id, offsets in sorted(per_doc.items())
            )
            postings[term] = plist
        total_length = sum(d.length for d in self._docs.values())
        return Index(
            docs=dict(self._docs),
            postings=postings,
            total_length=total_length,
            analyzer_fingerprint=self.config.fingerprint(),
        )


def iter_corpus(path: str | Path) -> Iterator[tuple[str, str]]:
    """Yield (doc_id, text) pairs from a corpus source.

    A directory yields every ``*.txt`` file in name order, with the file
    stem as the document id. A file is read as line-delimited records,
    one JSON object with "id" and "text" fields per line.
    """
    path = Path(path)
    if path.is_dir():
        for txt in sorted(path.glob("*.txt")):
            yield txt.stem, txt.read_text(encoding="utf-8")
        return
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            if "id" not in record or "text" not in record:
                raise ValueError(f"record on line {line_no} lacks id/text")
            yield str(record["id"]), str(record["text"])


def build_index(corpus: Iterator[tuple[str, str]] | str | Path,
                config: Optional[AnalyzerConfig] = None) -> Index:
    """Build a committed index from a corpus path or (id, text) pairs."""
    if isinstance(corpus, (str, Path)):
        corpus = iter_corpus(corpus)
    builder = IndexBuilder(config)
    for doc_id, text in corpus:
        builder.add_document(doc_id, text)
    return builder.commit()


def _pack_str(value: str) -> bytes:
    data = value.encode("utf-8")
    return struct.pack("<I", len(data)) + data


class _Reader:
    def __init__(self, data: bytes, offset: int = 0):
        self.data = data
        self.pos = offset

    def take(self, count: int) -> bytes:
        if self.pos + count > len(self.data):
            raise CorruptIndex("unexpected end of file")
        chunk = self.data[self.pos : self.pos + count]
        self.pos += count
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]

    def f64(self) -> float:
        return struct.unpack("<d", self.take(8))[0]

    def string(self) -> str:
        length = self.u32()
        return self.take(length).decode("utf-8")


def save_index(index: Index, path: str) -> None:
    """Serialize the index to a single file. Deterministic: equal indexes
    produce byte-identical files."""
    parts: list[bytes] = [MAGIC, struct.pack("<I", FORMAT_VERSION)]
    parts.append(_pack_str(index.analyzer_fingerprint))
    parts.append(struct.pack("<I", index.doc_count))
    parts.append(struct.pack("<d", index.avgdl))
    parts.append(struct.pack("<Q", index.total_length))

    doc_ids = index.doc_ids()
    ordinal = {doc_id: i for i, doc_id in enumerate(doc_ids)}
    for doc_id in doc_ids:
        parts.append(_pack_str(doc_id))
        parts.append(_pack_str(index.stored_text(doc_id)))
        parts.append(struct.pack("<I", index.doc_length(doc_id)))

    vocab = index.vocab()
    parts.append(struct.pack("<I", len(vocab)))
    for term, _df in vocab:
        parts.append(_pack_str(term))
        plist = index.postings_for(term)
        parts.append(struct.pack("<I", len(plist)))
        for posting in plist:
            parts.append(struct.pack("<II", ordinal[posting.doc], posting.tf))
            for start, end in posting.occurrences:
                parts.append(struct.pack("<II", start, end))

    payload = b"".join(parts)
    digest = hashlib.sha256(payload).digest()
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
            fh.write(digest)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def load_index(path: str) -> Index:
    """Load an index written by save_index, verifying magic, version and
    content digest."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc

    if len(data) < len(MAGIC) + 4 + 32:
        raise CorruptIndex("file too short")
    if data[: len(MAGIC)] != MAGIC:
        raise CorruptIndex("bad magic")
    payload, digest = data[:-32], data[-32:]
    if hashlib.sha256(payload).digest() != digest:
        raise CorruptIndex("content digest mismatch")

    reader = _Reader(payload, offset=len(MAGIC))
    version = reader.u32()
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(f"format version {version}, expected {FORMAT_VERSION}")

    fingerprint = reader.string()
    doc_count = reader.u32()
    reader.f64()  # avgdl, derived again from the lengths below
    total_length = reader.u64()

    doc_ids: list[str] = []
    docs: dict[str, StoredDoc] = {}
    for _ in range(doc_count):
        doc_id = reader.string()
        text = reader.string()
        length = reader.u32()
        doc_ids.append(doc_id)
        docs[doc_id] = StoredDoc(text=text, length=length)

    term_count = reader.u32()
    postings: dict[str, tuple[Posting, ...]] = {}
    for _ in range(term_count):
        term = reader.string()
        plist = []
        for _ in range(reader.u32()):
            ordinal, tf = reader.u32(), reader.u32()
            if ordinal >= len(doc_ids):
                raise CorruptIndex("posting references unknown document")
            occurrences = tuple((reader.u32(), reader.u32()) for _ in range(tf))
            plist.append(Posting(doc=doc_ids[ordinal], tf=tf, occurrences=occurrences))
        postings[term] = tuple(plist)

    return Index(
        docs=docs,
        postings=postings,
        total_length=total_length,
        analyzer_fingerprint=fingerprint,
    )
