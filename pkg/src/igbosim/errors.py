"""Exception hierarchy shared by all igbosim modules."""

from __future__ import annotations


class IgboSimError(Exception):
    """Base class for every error raised by igbosim."""


class ConfigError(IgboSimError, ValueError):
    """Invalid pipeline configuration or an unresolvable stop-word list."""


class InvalidOrderError(IgboSimError, ValueError):
    """An n-gram order below 1 was requested."""


class OrderMismatchError(IgboSimError, ValueError):
    """Two feature vectors of different n-gram order were combined."""


class DecodeError(IgboSimError, ValueError):
    """A corpus file is not valid UTF-8.

    ``offset`` is the byte offset of the first offending byte in the file.
    """

    def __init__(self, path, offset: int, reason: str = "invalid UTF-8"):
        self.path = str(path)
        self.offset = offset
        self.reason = reason
        super().__init__(f"{self.path}: {reason} at byte offset {offset}")


class CorpusError(IgboSimError):
    """Corpus-level problem: missing directory, duplicate ids, bad manifest."""


class DuplicateDocumentError(CorpusError):
    pass


class VectorFormatError(IgboSimError, ValueError):
    """Malformed vector-store or JSON record; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class EmptyInputError(IgboSimError, ValueError):
    pass


class UnknownDocumentError(IgboSimError, KeyError):
    def __str__(self) -> str:
        return f"unknown document id: {self.args[0]!r}"
