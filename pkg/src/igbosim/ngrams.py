"""Word-level n-gram frequency vectors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from igbosim.errors import InvalidOrderError, OrderMismatchError
from igbosim.preprocessing import TokenStream

__all__ = ["FeatureVector", "build_ngrams", "check_order", "vocabulary_union"]

FEATURE_SEPARATOR = " "


def _validate_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidOrderError(f"n-gram order must be an integer >= 1, got {n!r}")
    return n


@dataclass(frozen=True)
class FeatureVector:
    """Raw n-gram frequencies of one document.

    Feature keys are ``n`` words joined by single spaces. Zero counts are
    never stored, so a missing key means frequency 0.
    """

    doc_id: str | None
    n: int
    counts: Mapping[str, int] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        _validate_order(self.n)
        frozen = {}
        for feature, count in self.counts.items():
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise ValueError(f"feature {feature!r}: count must be a positive integer, got {count!r}")
            if not feature or feature.count(FEATURE_SEPARATOR) != self.n - 1:
                raise ValueError(f"feature {feature!r} is not a {self.n}-gram")
            frozen[feature] = count
        object.__setattr__(self, "counts", MappingProxyType(frozen))

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, feature: str) -> int:
        return self.counts.get(feature, 0)

    @property
    def total_count(self) -> int:
        return sum(self.counts.values())

    def with_id(self, doc_id: str) -> "FeatureVector":
        return FeatureVector(doc_id, self.n, self.counts)


def _windows(tokens: tuple[str, ...], n: int) -> Iterable[str]:
    return (FEATURE_SEPARATOR.join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def build_ngrams(stream: TokenStream | Iterable[str], n: int = 1, doc_id: str | None = None) -> FeatureVector:
    """Count every contiguous window of ``n`` tokens.

    The window slides over the whole filtered stream, so n-grams may span
    positions where punctuation or stop-words were removed.

    >>> build_ngrams(["projekto", "nkuziie", "projekto", "nkuziie"], 2).counts["projekto nkuziie"]
    2
    """
    _validate_order(n)
    if isinstance(stream, TokenStream):
        tokens = stream.tokens
        doc_id = stream.doc_id if doc_id is None else doc_id
    else:
        tokens = tuple(stream)
    return FeatureVector(doc_id, n, Counter(_windows(tokens, n)))


def check_order(a: FeatureVector, b: FeatureVector) -> int:
    if a.n != b.n:
        raise OrderMismatchError(f"n-gram order mismatch: cannot compare a {a.n}-gram vector with a {b.n}-gram vector")
    return a.n


def vocabulary_union(a: FeatureVector, b: FeatureVector) -> list[str]:
    """Sorted union of both vectors' features."""
    check_order(a, b)
    return sorted(a.counts.keys() | b.counts.keys())
