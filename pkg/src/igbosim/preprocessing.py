"""Igbo text preprocessing.

The pipeline has three stages, each a pure function:

* :func:`normalize` lower-cases the text, strips tone marks, drops words that
  carry digits or special characters and splits hyphenated or apostrophized
  words into their parts.
* :func:`tokenize` segments normalized text on whitespace, peels quotes and
  sentence punctuation off each token and separates verbal prefixes such as
  ``na-``.
* :func:`remove_stopwords` drops stop-words and tokens shorter than
  ``min_token_length``.

:func:`preprocess` chains the three.

Dot-below letters (``ọ ụ ị``) and ``ṅ`` are alphabet members in standard Igbo
orthography, so they survive normalization; only the grave, acute and macron
tone marks are removed.
"""

from __future__ import annotations

import configparser
import functools
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from igbosim.errors import ConfigError

__all__ = [
    "BUILTIN_STOPWORDS",
    "DEFAULT_SPLIT_PREFIXES",
    "PipelineConfig",
    "StopWordList",
    "TokenStream",
    "load_config",
    "load_stopwords",
    "normalize",
    "preprocess",
    "remove_stopwords",
    "tokenize",
]

BUILTIN_STOPWORDS = "builtin-default"
DEFAULT_SPLIT_PREFIXES = ("ga-", "aga-", "na-", "ana-", "oga-", "iga-", "ona-", "ina-")

# combining grave, acute, macron
TONE_MARKS = frozenset("\u0300\u0301\u0304")
# combining dot below (ọ ụ ị), dot above (ṅ)
UNDERDOTS = frozenset("\u0323\u0307")

HYPHENS = frozenset("-\u2010\u2011")
APOSTROPHES = frozenset("'\u2019\u02bc")
QUOTES = frozenset("\"'\u201c\u201d\u2018\u2019\u00ab\u00bb")
SENTENCE_PUNCT = frozenset(",:;!?.")
_TRAILING = QUOTES | SENTENCE_PUNCT


@dataclass(frozen=True)
class PipelineConfig:
    """Settings shared by every preprocessing stage.

    ``ngram_order`` is not used by the stages themselves; it is the default
    order picked up by the CLI and corpus-level helpers.
    """

    min_token_length: int = 3
    strip_tone_marks: bool = True
    preserve_underdots: bool = True
    stopword_list_id: str = BUILTIN_STOPWORDS
    split_prefixes: tuple[str, ...] = DEFAULT_SPLIT_PREFIXES
    ngram_order: int = 1

    def __post_init__(self):
        if not isinstance(self.min_token_length, int) or self.min_token_length < 1:
            raise ConfigError(f"min_token_length must be >= 1, got {self.min_token_length!r}")
        if not isinstance(self.ngram_order, int) or self.ngram_order < 1:
            raise ConfigError(f"ngram_order must be >= 1, got {self.ngram_order!r}")
        prefixes = tuple(self.split_prefixes)
        for prefix in prefixes:
            if len(prefix) < 2 or not prefix.endswith("-"):
                raise ConfigError(f"split prefix {prefix!r} must be non-empty and end with '-'")
        object.__setattr__(self, "split_prefixes", prefixes)

    def kept_marks(self) -> frozenset[str]:
        """Combining marks that survive normalization under this config."""
        kept = frozenset()
        if self.preserve_underdots:
            kept |= UNDERDOTS
        if not self.strip_tone_marks:
            kept |= TONE_MARKS
        return kept


DEFAULT_CONFIG = PipelineConfig()

_BOOL_KEYS = {"strip_tone_marks", "preserve_underdots"}
_INT_KEYS = {"min_token_length", "ngram_order"}
_KEY_ALIASES = {"stopwords": "stopword_list_id", "n": "ngram_order"}


def load_config(path) -> PipelineConfig:
    """Read a ``key = value`` config file into a :class:`PipelineConfig`.

    Lines starting with ``#`` or ``;`` are comments. ``split_prefixes`` takes a
    comma-separated list. A relative ``stopwords`` path is resolved against
    the config file's directory.
    """
    path = Path(path)
    try:
        body = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc

    parser = configparser.ConfigParser(
        interpolation=None, comment_prefixes=("#", ";"), inline_comment_prefixes=("#", ";")
    )
    try:
        parser.read_string("[pipeline]\n" + body, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    section = parser["pipeline"]
    kwargs = {}
    for raw_key in section:
        key = _KEY_ALIASES.get(raw_key, raw_key)
        if key not in PipelineConfig.__dataclass_fields__:
            raise ConfigError(f"{path}: unknown config key {raw_key!r}")
        try:
            if key in _BOOL_KEYS:
                kwargs[key] = section.getboolean(raw_key)
            elif key in _INT_KEYS:
                kwargs[key] = section.getint(raw_key)
            elif key == "split_prefixes":
                kwargs[key] = tuple(p.strip() for p in section[raw_key].split(",") if p.strip())
            else:
                kwargs[key] = section[raw_key].strip()
        except ValueError as exc:
            raise ConfigError(f"{path}: bad value for {raw_key!r}: {exc}") from exc

    ref = kwargs.get("stopword_list_id")
    if ref and ref != BUILTIN_STOPWORDS and not Path(ref).is_absolute():
        kwargs["stopword_list_id"] = str(path.parent / ref)
    return PipelineConfig(**kwargs)


@dataclass(frozen=True)
class StopWordList:
    words: frozenset[str]
    source: str = BUILTIN_STOPWORDS

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words: Iterable[str], source: str = "inline") -> "StopWordList":
        return cls(frozenset(_fold_stopword(w) for w in words if w.strip()), source)


def _fold_stopword(word: str) -> str:
    decomposed = unicodedata.normalize("NFD", word.strip().lower())
    kept = "".join(ch for ch in decomposed if ch not in TONE_MARKS)
    return unicodedata.normalize("NFC", kept)


def parse_stopwords(text: str, source: str) -> StopWordList:
    words = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.append(line)
    return StopWordList.from_words(words, source)


@functools.lru_cache(maxsize=None)
def _builtin_stopwords() -> StopWordList:
    text = resources.files("igbosim").joinpath("data/stopwords_ig.txt").read_text(encoding="utf-8")
    return parse_stopwords(text, BUILTIN_STOPWORDS)


def load_stopwords(ref: str = BUILTIN_STOPWORDS) -> StopWordList:
    """Load a stop-word list by id: ``"builtin-default"`` or a file path.

    The file format is UTF-8, one word per line; blank lines and ``#``
    comments are ignored and every entry is case-folded.
    """
    if ref == BUILTIN_STOPWORDS:
        return _builtin_stopwords()
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"stop-word list {ref!r} cannot be loaded: {exc}") from exc
    return parse_stopwords(text, str(path))


@dataclass(frozen=True)
class TokenStream:
    doc_id: str | None
    tokens: tuple[str, ...]
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _fold_marks(text: str, kept: frozenset[str]) -> str:
    decomposed = unicodedata.normalize("NFD", text)
    return unicodedata.normalize(
        "NFC", "".join(ch for ch in decomposed if not unicodedata.combining(ch) or ch in kept)
    )


def _peel_edges(word: str) -> tuple[str, str, str]:
    """Split ``word`` into (leading quotes, core, trailing quotes/punctuation)."""
    start, end = 0, len(word)
    while start < end and word[start] in QUOTES:
        start += 1
    while end > start and word[end - 1] in _TRAILING:
        end -= 1
    return word[:start], word[start:end], word[end:]


def _normalize_word(word: str, kept: frozenset[str]) -> str:
    # digit rule runs on the whole word, before any hyphen splitting
    if any(ch.isdigit() for ch in word):
        return ""
    lead, core, trail = _peel_edges(word)
    parts, buf = [], []
    for ch in core:
        if ch in HYPHENS or ch in APOSTROPHES:
            if buf:
                parts.append("".join(buf))
                buf = []
        elif ch.isalpha() or (ch in kept and buf):
            buf.append(ch)
        else:
            return ""
    if buf:
        parts.append("".join(buf))
    if not parts:
        return ""
    return lead + " ".join(parts) + trail


def normalize(text: str, config: PipelineConfig = DEFAULT_CONFIG) -> str:
    """Lower-case, strip tone marks and filter non-Igbo words.

    >>> normalize("n'elu ụ̀lọ 3km")
    'n elu ụlọ'
    """
    kept = config.kept_marks()
    folded = _fold_marks(text.lower(), kept)
    words = (_normalize_word(w, kept) for w in folded.split())
    return " ".join(w for w in words if w)


def _strip_token(token: str) -> str:
    return _peel_edges(token)[1]


def _split_prefixes(token: str, prefixes: tuple[str, ...]) -> list[str]:
    out = []
    while True:
        for prefix in prefixes:
            if token.startswith(prefix) and len(token) > len(prefix):
                out.append(prefix[:-1])
                token = _strip_token(token[len(prefix):])
                break
        else:
            break
    if token:
        out.append(token)
    return out


def tokenize(text: str, config: PipelineConfig = DEFAULT_CONFIG, doc_id: str | None = None) -> TokenStream:
    """Segment normalized text into tokens.

    Tokens are whitespace-delimited. Surrounding quotes and trailing sentence
    punctuation are removed, and a token opening with one of
    ``config.split_prefixes`` is emitted as the bare prefix followed by the
    remainder.
    """
    prefixes = tuple(sorted(config.split_prefixes, key=len, reverse=True))
    tokens = []
    for raw in text.split():
        token = _strip_token(raw)
        if token:
            tokens.extend(_split_prefixes(token, prefixes))
    return TokenStream(doc_id, tokens, ("normalized", "tokenized"))


def remove_stopwords(
    stream: TokenStream, stopwords: StopWordList | None, config: PipelineConfig = DEFAULT_CONFIG
) -> TokenStream:
    if stopwords is None:
        raise ConfigError(f"stop-word list {config.stopword_list_id!r} is not loaded")
    floor = config.min_token_length
    kept = [t for t in stream.tokens if len(t) >= floor and t not in stopwords]
    provenance = stream.provenance + (() if "filtered" in stream.provenance else ("filtered",))
    return TokenStream(stream.doc_id, kept, provenance)


def preprocess(
    text: str,
    config: PipelineConfig = DEFAULT_CONFIG,
    stopwords: StopWordList | None = None,
    doc_id: str | None = None,
) -> TokenStream:
    """Run the full pipeline on raw text.

    When ``stopwords`` is omitted the list named by
    ``config.stopword_list_id`` is loaded.
    """
    if stopwords is None:
        stopwords = load_stopwords(config.stopword_list_id)
    return remove_stopwords(tokenize(normalize(text, config), config, doc_id), stopwords, config)
