"""Pairwise distance matrices, row averages and nearest-document reports.

A :class:`DistanceMatrix` compares row documents against column documents
under one metric and one n-gram order. :func:`compare_orders` builds one
matrix per order over the same documents and summarises, per row, the mean
value, the nearest column and which order gives the tighter (for distances,
smaller; for similarities, larger) average.

All arithmetic stays at full precision; rounding happens only in the CSV
writers.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from igbosim.corpus import Corpus, RawDocument
from igbosim.errors import EmptyInputError, UnknownDocumentError, VectorFormatError
from igbosim.ngrams import FeatureVector, build_ngrams
from igbosim.preprocessing import DEFAULT_CONFIG, PipelineConfig, StopWordList, load_stopwords, preprocess
from igbosim.similarity import MetricKind, compute

__all__ = [
    "ComparisonReport",
    "DistanceMatrix",
    "Nearest",
    "build_matrix",
    "compare_matrices",
    "compare_orders",
    "export",
    "import_json",
    "matrix_from_vectors",
    "nearest_document",
    "row_average",
    "vectorize",
]


@dataclass(frozen=True)
class DistanceMatrix:
    metric: MetricKind
    n: int
    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "metric", MetricKind.parse(self.metric))
        object.__setattr__(self, "row_ids", tuple(self.row_ids))
        object.__setattr__(self, "col_ids", tuple(self.col_ids))
        grid = tuple(tuple(float(v) for v in row) for row in self.values)
        if len(grid) != len(self.row_ids) or any(len(r) != len(self.col_ids) for r in grid):
            raise ValueError(
                f"values must be {len(self.row_ids)}x{len(self.col_ids)}, got {len(grid)} rows"
            )
        if any(v < 0 for row in grid for v in row):
            raise ValueError("matrix values must be non-negative")
        object.__setattr__(self, "values", grid)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_ids), len(self.col_ids)

    def row(self, row_id: str) -> tuple[float, ...]:
        try:
            return self.values[self.row_ids.index(row_id)]
        except ValueError:
            raise UnknownDocumentError(row_id) from None

    def value(self, row_id: str, col_id: str) -> float:
        try:
            j = self.col_ids.index(col_id)
        except ValueError:
            raise UnknownDocumentError(col_id) from None
        return self.row(row_id)[j]

    def to_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "n": self.n,
            "row_ids": list(self.row_ids),
            "col_ids": list(self.col_ids),
            "values": [list(r) for r in self.values],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "DistanceMatrix":
        return cls(data["metric"], data["n"], data["row_ids"], data["col_ids"], data["values"])


def vectorize(
    docs: Iterable[RawDocument],
    n: int,
    config: PipelineConfig = DEFAULT_CONFIG,
    stopwords: StopWordList | None = None,
) -> list[FeatureVector]:
    if stopwords is None:
        stopwords = load_stopwords(config.stopword_list_id)
    return [build_ngrams(preprocess(d.text, config, stopwords, d.doc_id), n) for d in docs]


def matrix_from_vectors(
    rows: Sequence[FeatureVector], cols: Sequence[FeatureVector], metric: MetricKind | str
) -> DistanceMatrix:
    if not rows or not cols:
        raise EmptyInputError("distance matrix needs at least one row and one column document")
    metric = MetricKind.parse(metric)
    values = [[compute(metric, r, c).value for c in cols] for r in rows]
    return DistanceMatrix(metric, rows[0].n, [r.doc_id for r in rows], [c.doc_id for c in cols], values)


def build_matrix(
    rows: Sequence[RawDocument],
    cols: Sequence[RawDocument],
    n: int,
    metric: MetricKind | str = MetricKind.EUCLIDEAN,
    config: PipelineConfig = DEFAULT_CONFIG,
    stopwords: StopWordList | None = None,
) -> DistanceMatrix:
    """Compare every row document with every column document.

    Each distinct document is preprocessed and vectorized once.
    """
    if not rows or not cols:
        raise EmptyInputError("distance matrix needs at least one row and one column document")
    unique = {d.doc_id: d for d in (*rows, *cols)}
    vectors = dict(zip(unique, vectorize(unique.values(), n, config, stopwords)))
    return matrix_from_vectors([vectors[d.doc_id] for d in rows], [vectors[d.doc_id] for d in cols], metric)


def row_average(matrix: DistanceMatrix, row_id: str) -> float:
    return statistics.fmean(matrix.row(row_id))


@dataclass(frozen=True)
class Nearest:
    doc_id: str
    value: float
    tie: bool = False


def nearest_document(matrix: DistanceMatrix, row_id: str, exclude_self: bool = False) -> Nearest:
    """Closest column for ``row_id``: argmin for distances, argmax for similarities.

    Ties go to the first column in column order and are flagged. With
    ``exclude_self`` the column carrying the row's own id is skipped.
    """
    values = matrix.row(row_id)
    candidates = [
        (cid, v) for cid, v in zip(matrix.col_ids, values) if not (exclude_self and cid == row_id)
    ]
    if not candidates:
        raise EmptyInputError(f"no candidate columns for {row_id!r}")
    pick = min if matrix.metric.is_distance else max
    best = pick(v for _, v in candidates)
    winners = [cid for cid, v in candidates if v == best]
    return Nearest(winners[0], best, len(winners) > 1)


@dataclass(frozen=True)
class ComparisonReport:
    """Per-row summary across n-gram orders.

    ``winners[row]`` is the order with the better average, or ``None`` on a tie.
    """

    metric: MetricKind
    orders: tuple[int, ...]
    row_ids: tuple[str, ...]
    averages: Mapping[str, Mapping[int, float]]
    nearest: Mapping[str, Mapping[int, Nearest]]
    winners: Mapping[str, int | None]

    def to_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "orders": list(self.orders),
            "rows": [
                {
                    "doc_id": rid,
                    "averages": {str(n): self.averages[rid][n] for n in self.orders},
                    "nearest": {
                        str(n): {
                            "doc_id": self.nearest[rid][n].doc_id,
                            "value": self.nearest[rid][n].value,
                            "tie": self.nearest[rid][n].tie,
                        }
                        for n in self.orders
                    },
                    "winner": self.winners[rid],
                }
                for rid in self.row_ids
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ComparisonReport":
        orders = tuple(data["orders"])
        rows = data["rows"]
        return cls(
            MetricKind.parse(data["metric"]),
            orders,
            tuple(r["doc_id"] for r in rows),
            {r["doc_id"]: {n: r["averages"][str(n)] for n in orders} for r in rows},
            {r["doc_id"]: {n: Nearest(**r["nearest"][str(n)]) for n in orders} for r in rows},
            {r["doc_id"]: r["winner"] for r in rows},
        )


def compare_matrices(matrices: Mapping[int, DistanceMatrix], exclude_self: bool = False) -> ComparisonReport:
    """Summarise pre-built matrices keyed by n-gram order."""
    if len(matrices) < 2:
        raise ValueError("comparison needs at least two n-gram orders")
    orders = tuple(matrices)
    first = matrices[orders[0]]
    for m in matrices.values():
        if m.row_ids != first.row_ids or m.col_ids != first.col_ids or m.metric != first.metric:
            raise ValueError("matrices must share metric, row ids and column ids")

    pick = min if first.metric.is_distance else max
    averages, nearest, winners = {}, {}, {}
    for rid in first.row_ids:
        averages[rid] = {n: row_average(matrices[n], rid) for n in orders}
        nearest[rid] = {n: nearest_document(matrices[n], rid, exclude_self) for n in orders}
        best = pick(averages[rid].values())
        leaders = [n for n in orders if averages[rid][n] == best]
        winners[rid] = leaders[0] if len(leaders) == 1 else None
    return ComparisonReport(first.metric, orders, first.row_ids, averages, nearest, winners)


def compare_orders(
    corpus: Corpus,
    orders: Sequence[int],
    metric: MetricKind | str = MetricKind.EUCLIDEAN,
    config: PipelineConfig | None = None,
    stopwords: StopWordList | None = None,
    *,
    row_ids: Sequence[str] | None = None,
    col_ids: Sequence[str] | None = None,
    exclude_self: bool = False,
) -> tuple[ComparisonReport, dict[int, DistanceMatrix]]:
    """Build one matrix per order over the same documents and compare them."""
    if len(set(orders)) < 2:
        raise ValueError("comparison needs at least two distinct n-gram orders")
    config = corpus.config if config is None else config
    stopwords = corpus.stopword_list if stopwords is None else stopwords
    rows, cols = corpus.subset(row_ids), corpus.subset(col_ids)
    matrices = {n: build_matrix(rows, cols, n, metric, config, stopwords) for n in dict.fromkeys(orders)}
    return compare_matrices(matrices, exclude_self), matrices


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def matrix_to_csv(matrix: DistanceMatrix, precision: int = 2, label: str = "doc_id") -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([label, *matrix.col_ids])
    for rid, row in zip(matrix.row_ids, matrix.values):
        writer.writerow([rid, *(_fmt(v, precision) for v in row)])
    return out.getvalue()


def report_to_csv(report: ComparisonReport, precision: int = 2) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["doc_id"]
    header += [f"avg_n{n}" for n in report.orders]
    for n in report.orders:
        header += [f"nearest_n{n}", f"nearest_n{n}_value"]
    header.append("winner")
    writer.writerow(header)
    for rid in report.row_ids:
        row = [rid]
        row += [_fmt(report.averages[rid][n], precision) for n in report.orders]
        for n in report.orders:
            near = report.nearest[rid][n]
            row += [near.doc_id + (" (tie)" if near.tie else ""), _fmt(near.value, precision)]
        winner = report.winners[rid]
        row.append("tie" if winner is None else f"n={winner}")
        writer.writerow(row)
    return out.getvalue()


def to_json(obj: DistanceMatrix | ComparisonReport) -> str:
    kind = "matrix" if isinstance(obj, DistanceMatrix) else "report"
    return json.dumps({"type": kind, **obj.to_dict()}, ensure_ascii=False, indent=2) + "\n"


def from_json(text: str) -> DistanceMatrix | ComparisonReport:
    try:
        data = json.loads(text)
        kind = data.pop("type")
        if kind == "matrix":
            return DistanceMatrix.from_dict(data)
        if kind == "report":
            return ComparisonReport.from_dict(data)
    except json.JSONDecodeError as exc:
        raise VectorFormatError(exc.lineno, exc.msg) from None
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise VectorFormatError(1, f"malformed JSON export: {exc}") from None
    raise VectorFormatError(1, f"unknown export type {kind!r}")


def render(obj: DistanceMatrix | ComparisonReport, fmt: str = "csv", precision: int = 2) -> str:
    if fmt == "json":
        return to_json(obj)
    if fmt != "csv":
        raise ValueError(f"unknown export format {fmt!r}")
    if isinstance(obj, DistanceMatrix):
        return matrix_to_csv(obj, precision)
    return report_to_csv(obj, precision)


def export(obj: DistanceMatrix | ComparisonReport, fmt: str, path, precision: int = 2) -> None:
    """Write a matrix or report as CSV (rounded to ``precision``) or JSON (full precision)."""
    Path(path).write_text(render(obj, fmt, precision), encoding="utf-8", newline="\n")


def import_json(path) -> DistanceMatrix | ComparisonReport:
    return from_json(Path(path).read_text(encoding="utf-8"))
