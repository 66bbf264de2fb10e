"""Vector-space similarity measures over n-gram frequency vectors.

Euclidean distance is a *distance* (0 for identical documents, unbounded
above). Cosine, extended Jaccard (Tanimoto) and Dice are *similarities* in
``[0, 1]`` for non-negative vectors, 1 meaning identical direction/content.

Products and squared differences are accumulated as exact integers; floating
point enters only at the final division or square root, which keeps every
measure bit-exactly symmetric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from igbosim.ngrams import FeatureVector, check_order

__all__ = [
    "MetricKind",
    "MetricValue",
    "compute",
    "cosine_similarity",
    "dice_similarity",
    "dot",
    "euclidean_distance",
    "jaccard_similarity",
]


class MetricKind(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    COSINE = "cosine"
    JACCARD = "jaccard"
    DICE = "dice"

    @property
    def is_distance(self) -> bool:
        return self is MetricKind.EUCLIDEAN

    @classmethod
    def parse(cls, name: "str | MetricKind") -> "MetricKind":
        try:
            return cls(name.lower() if isinstance(name, str) else name)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown metric {name!r}; choose one of {choices}") from None


@dataclass(frozen=True)
class MetricValue:
    kind: MetricKind
    value: float

    @property
    def interpretation(self) -> str:
        return "distance" if self.kind.is_distance else "similarity"

    def __float__(self) -> float:
        return self.value


def _squared_norm(v: FeatureVector) -> int:
    return sum(c * c for c in v.counts.values())


def _dot(a: FeatureVector, b: FeatureVector) -> int:
    if len(b) < len(a):
        a, b = b, a
    return sum(count * b[feature] for feature, count in a.counts.items())


def dot(a: FeatureVector, b: FeatureVector) -> int:
    """Inner product over the union vocabulary; absent features count as 0."""
    check_order(a, b)
    return _dot(a, b)


def euclidean_distance(a: FeatureVector, b: FeatureVector) -> MetricValue:
    check_order(a, b)
    features = a.counts.keys() | b.counts.keys()
    squared = sum((a[f] - b[f]) ** 2 for f in features)
    return MetricValue(MetricKind.EUCLIDEAN, math.sqrt(squared))


def cosine_similarity(a: FeatureVector, b: FeatureVector) -> MetricValue:
    """Cosine of the angle between ``a`` and ``b``; 0.0 if either is empty."""
    check_order(a, b)
    aa, bb = _squared_norm(a), _squared_norm(b)
    if aa == 0 or bb == 0:
        return MetricValue(MetricKind.COSINE, 0.0)
    value = _dot(a, b) / math.sqrt(aa * bb)
    return MetricValue(MetricKind.COSINE, min(value, 1.0))


def jaccard_similarity(a: FeatureVector, b: FeatureVector) -> MetricValue:
    """Extended Jaccard: ``a.b / (a.a + b.b - a.b)``.

    Two empty vectors score 1.0; one empty vector scores 0.0.
    """
    check_order(a, b)
    aa, bb = _squared_norm(a), _squared_norm(b)
    if aa == 0 and bb == 0:
        return MetricValue(MetricKind.JACCARD, 1.0)
    ab = _dot(a, b)
    return MetricValue(MetricKind.JACCARD, ab / (aa + bb - ab))


def dice_similarity(a: FeatureVector, b: FeatureVector) -> MetricValue:
    """Dice coefficient ``2 a.b / (a.a + b.b)``, with the Jaccard empty-vector conventions."""
    check_order(a, b)
    aa, bb = _squared_norm(a), _squared_norm(b)
    if aa == 0 and bb == 0:
        return MetricValue(MetricKind.DICE, 1.0)
    return MetricValue(MetricKind.DICE, 2 * _dot(a, b) / (aa + bb))


_METRICS = {
    MetricKind.EUCLIDEAN: euclidean_distance,
    MetricKind.COSINE: cosine_similarity,
    MetricKind.JACCARD: jaccard_similarity,
    MetricKind.DICE: dice_similarity,
}


def compute(kind: MetricKind | str, a: FeatureVector, b: FeatureVector) -> MetricValue:
    return _METRICS[MetricKind.parse(kind)](a, b)
