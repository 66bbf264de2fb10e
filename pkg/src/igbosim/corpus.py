"""Corpus ingestion (strict UTF-8) and feature-vector persistence.

Vector store format, UTF-8, one field separator (TAB) per line::

    #igbosim-vectors<TAB>1
    doc<TAB><doc_id><TAB><n><TAB><feature count>
    <feature><TAB><count>
    ...

Each ``doc`` record is followed by exactly ``feature count`` feature lines,
sorted by feature. A store holding no vectors is just the header line.
"""

from __future__ import annotations

import codecs
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from igbosim.errors import CorpusError, DecodeError, DuplicateDocumentError, UnknownDocumentError, VectorFormatError
from igbosim.ngrams import FeatureVector
from igbosim.preprocessing import DEFAULT_CONFIG, PipelineConfig, StopWordList, load_stopwords

log = logging.getLogger(__name__)

__all__ = [
    "Corpus",
    "RawDocument",
    "decode_document",
    "encode_document",
    "load_corpus",
    "load_vectors",
    "save_vectors",
]

MANIFEST_NAME = "manifest.tsv"
STORE_MAGIC = "#igbosim-vectors"
STORE_VERSION = "1"


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    text: str
    source_path: str | None = None
    byte_length: int = -1

    def __post_init__(self):
        if self.byte_length < 0:
            object.__setattr__(self, "byte_length", len(self.text.encode("utf-8")))

    @property
    def char_length(self) -> int:
        return len(self.text)


def decode_document(path, doc_id: str | None = None) -> RawDocument:
    """Read ``path`` as strict UTF-8.

    A leading byte-order mark is dropped and CRLF/CR line endings become LF.
    Raises :class:`DecodeError` with the byte offset of the first invalid
    sequence; I/O failures propagate as :class:`OSError`.
    """
    path = Path(path)
    data = path.read_bytes()
    skip = len(codecs.BOM_UTF8) if data.startswith(codecs.BOM_UTF8) else 0
    try:
        text = data[skip:].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(path, exc.start + skip, exc.reason) from exc
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return RawDocument(doc_id or path.stem, text, str(path), len(data))


def encode_document(doc: RawDocument, path) -> None:
    Path(path).write_bytes(doc.text.encode("utf-8"))


@dataclass
class Corpus:
    documents: tuple[RawDocument, ...]
    stopword_list: StopWordList
    config: PipelineConfig = DEFAULT_CONFIG
    skipped: list[tuple[str, Exception]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.doc_id for d in self.documents]

    def get(self, doc_id: str) -> RawDocument:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        raise UnknownDocumentError(doc_id)

    def subset(self, ids: Iterable[str] | None) -> list[RawDocument]:
        """Documents with the given ids, in the order requested (all if ``None``)."""
        if ids is None:
            return list(self.documents)
        return [self.get(i) for i in ids]


def _read_manifest(directory: Path) -> dict[str, str]:
    """Map relative file name -> doc_id from ``manifest.tsv``."""
    path = directory / MANIFEST_NAME
    if not path.is_file():
        return {}
    mapping = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not all(p.strip() for p in parts):
            raise CorpusError(f"{path}:{lineno}: expected 'doc_id<TAB>filename'")
        doc_id, filename = (p.strip() for p in parts)
        mapping[Path(filename).as_posix()] = doc_id
    return mapping


def load_corpus(
    directory,
    config: PipelineConfig = DEFAULT_CONFIG,
    *,
    pattern: str = "*.txt",
    stopwords: StopWordList | None = None,
    fail_fast: bool = True,
) -> Corpus:
    """Decode every file under ``directory`` matching ``pattern``.

    Files are searched recursively and read in lexicographic order of their
    relative paths. Document ids default to the file stem; a
    ``manifest.tsv`` (``doc_id<TAB>filename``) in ``directory`` overrides
    them. With ``fail_fast=False`` undecodable files are logged and listed in
    :attr:`Corpus.skipped` instead of aborting the load.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"corpus directory not found: {directory}")
    if stopwords is None:
        stopwords = load_stopwords(config.stopword_list_id)

    manifest = _read_manifest(directory)
    files = sorted(
        (p for p in directory.rglob(pattern) if p.is_file() and p.name != MANIFEST_NAME),
        key=lambda p: p.relative_to(directory).as_posix(),
    )
    documents, skipped, seen = [], [], {}
    for path in files:
        rel = path.relative_to(directory).as_posix()
        doc_id = manifest.get(rel, path.stem)
        if doc_id in seen:
            raise DuplicateDocumentError(f"duplicate document id {doc_id!r}: {seen[doc_id]} and {rel}")
        try:
            doc = decode_document(path, doc_id)
        except (DecodeError, OSError) as exc:
            if fail_fast:
                raise
            log.warning("skipping %s: %s", rel, exc)
            skipped.append((rel, exc))
            continue
        seen[doc_id] = rel
        documents.append(doc)
    return Corpus(tuple(documents), stopwords, config, skipped)


def dumps_vectors(vectors: Iterable[FeatureVector]) -> str:
    out = io.StringIO()
    out.write(f"{STORE_MAGIC}\t{STORE_VERSION}\n")
    for vec in vectors:
        doc_id = "" if vec.doc_id is None else vec.doc_id
        if any(ch in doc_id for ch in "\t\n\r"):
            raise ValueError(f"doc_id {doc_id!r} contains a tab or newline")
        out.write(f"doc\t{doc_id}\t{vec.n}\t{len(vec)}\n")
        for feature in sorted(vec.counts):
            if any(ch in feature for ch in "\t\n\r"):
                raise ValueError(f"feature {feature!r} contains a tab or newline")
            out.write(f"{feature}\t{vec.counts[feature]}\n")
    return out.getvalue()


def _parse_int(text: str, lineno: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise VectorFormatError(lineno, f"{what} is not an integer: {text!r}") from None


def loads_vectors(text: str) -> list[FeatureVector]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise VectorFormatError(1, "missing header")
    if lines[0].split("\t") != [STORE_MAGIC, STORE_VERSION]:
        raise VectorFormatError(1, f"not a vector store header: {lines[0]!r}")

    vectors = []
    i = 1
    while i < len(lines):
        lineno = i + 1
        fields = lines[i].split("\t")
        if len(fields) != 4 or fields[0] != "doc":
            raise VectorFormatError(lineno, "expected 'doc<TAB>id<TAB>n<TAB>count'")
        n = _parse_int(fields[2], lineno, "n")
        expected = _parse_int(fields[3], lineno, "feature count")
        counts = {}
        for _ in range(expected):
            i += 1
            if i >= len(lines):
                raise VectorFormatError(len(lines), f"truncated record for {fields[1]!r}: expected {expected} features")
            parts = lines[i].split("\t")
            if len(parts) != 2:
                raise VectorFormatError(i + 1, "expected 'feature<TAB>count'")
            if parts[0] in counts:
                raise VectorFormatError(i + 1, f"duplicate feature {parts[0]!r}")
            counts[parts[0]] = _parse_int(parts[1], i + 1, "count")
        try:
            vectors.append(FeatureVector(fields[1] or None, n, counts))
        except ValueError as exc:
            raise VectorFormatError(lineno, str(exc)) from None
        i += 1
    return vectors


def save_vectors(vectors: Iterable[FeatureVector], path) -> None:
    """Write vectors to ``path``. Concurrent writers must be serialized by the caller."""
    Path(path).write_text(dumps_vectors(vectors), encoding="utf-8", newline="\n")


def load_vectors(path) -> list[FeatureVector]:
    return loads_vectors(Path(path).read_text(encoding="utf-8"))


def is_vector_store(path) -> bool:
    with open(path, "rb") as fh:
        return fh.read(len(STORE_MAGIC)) == STORE_MAGIC.encode()


def vectors_to_json(vectors: Sequence[FeatureVector]) -> str:
    records = [
        {"doc_id": v.doc_id, "n": v.n, "counts": {f: v.counts[f] for f in sorted(v.counts)}} for v in vectors
    ]
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"


def vectors_from_json(text: str) -> list[FeatureVector]:
    try:
        records = json.loads(text)
        return [FeatureVector(r["doc_id"], r["n"], r["counts"]) for r in records]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise VectorFormatError(getattr(exc, "lineno", 1), f"bad vector JSON: {exc}") from None
