"""Command-line front end.

Subcommands follow the pipeline stages so every intermediate artifact can be
inspected::

    igbosim preprocess doc.txt            # one token per line
    igbosim vectorize corpus/ --n 2       # vector store (TSV) or JSON
    igbosim compare a.txt b.txt --metric cosine
    igbosim matrix corpus/ --n 1,2 --format csv
    igbosim report corpus/ --n 1,2 --exclude-self

Exit status: 0 on success, 1 for runtime, I/O, decode or config errors,
2 for usage errors. Only data is written to stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from igbosim import analysis
from igbosim.corpus import (
    decode_document,
    dumps_vectors,
    is_vector_store,
    load_corpus,
    load_vectors,
    vectors_to_json,
)
from igbosim.errors import IgboSimError, OrderMismatchError
from igbosim.ngrams import FeatureVector, build_ngrams
from igbosim.preprocessing import PipelineConfig, load_config, load_stopwords, preprocess
from igbosim.similarity import MetricKind, compute

PROG = "igbosim"

COMPARE_NOTES = """\
Euclidean distance is sqrt(sum((a_i - b_i)^2)) over the union vocabulary.
Worked check: feature counts (4, 2) against (6, 5) give sqrt(13) = 3.61;
the value 3.32 that circulates for this example is an arithmetic slip.
"""


def _orders(text: str) -> list[int]:
    try:
        orders = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not orders or any(n < 1 for n in orders):
        raise argparse.ArgumentTypeError(f"n-gram orders must be >= 1, got {text!r}")
    return list(dict.fromkeys(orders))


def _precision(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = -1
    if not 0 <= value <= 17:
        raise argparse.ArgumentTypeError(f"precision must be an integer in 0..17, got {text!r}")
    return value


def _id_list(text: str) -> list[str]:
    ids = [part.strip() for part in text.split(",") if part.strip()]
    if not ids:
        raise argparse.ArgumentTypeError("expected a comma-separated list of document ids")
    return ids


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value pipeline config file")
    common.add_argument("--stopwords", help="stop-word list file (overrides the config)")
    common.add_argument("--n", type=_orders, help="n-gram order, or comma-separated orders")
    common.add_argument(
        "--metric", type=MetricKind.parse, default=MetricKind.EUCLIDEAN,
        help="euclidean (default), cosine, jaccard or dice",
    )
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--exclude-self", action="store_true", help="skip a document's own column when picking its nearest")
    common.add_argument("--precision", type=_precision, default=2, help="decimals in CSV/text output (default 2)")

    parser = argparse.ArgumentParser(prog=PROG, description="Igbo text n-gram similarity toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", parents=[common], help="dump the preprocessed token stream")
    p.add_argument("input", type=Path)

    p = sub.add_parser("vectorize", parents=[common], help="build n-gram frequency vectors")
    p.add_argument("input", type=Path, help="a text file or a corpus directory")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")

    p = sub.add_parser(
        "compare", parents=[common], help="score two documents",
        epilog=COMPARE_NOTES, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("doc_a", type=Path, help="text file or single-vector store")
    p.add_argument("doc_b", type=Path, help="text file or single-vector store")

    for name, help_text in (("matrix", "pairwise matrix over a corpus"), ("report", "compare n-gram orders over a corpus")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("corpus", type=Path)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--rows", type=_id_list, help="row document ids (default: all)")
        p.add_argument("--cols", type=_id_list, help="column document ids (default: all)")
        p.add_argument("--glob", default="*.txt", help="corpus file pattern (default *.txt)")
        p.add_argument("--skip-bad", action="store_true", help="skip undecodable files instead of failing")
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command in ("vectorize", "compare") and args.n and len(args.n) > 1:
        parser.error(f"{args.command} takes a single --n")
    if args.command == "report" and args.n is not None and len(args.n) < 2:
        parser.error("report needs at least two orders, e.g. --n 1,2")


def _pipeline(args: argparse.Namespace) -> PipelineConfig:
    config = load_config(args.config) if args.config else PipelineConfig()
    if args.stopwords:
        config = PipelineConfig(**{**config.__dict__, "stopword_list_id": str(args.stopwords)})
    return config


def _single_order(args, config: PipelineConfig) -> int:
    return args.n[0] if args.n else config.ngram_order


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def cmd_preprocess(args) -> None:
    config = _pipeline(args)
    doc = decode_document(args.input)
    stream = preprocess(doc.text, config, load_stopwords(config.stopword_list_id), doc.doc_id)
    _emit("".join(f"{t}\n" for t in stream.tokens), args.out)


def cmd_vectorize(args) -> None:
    config = _pipeline(args)
    n = _single_order(args, config)
    stopwords = load_stopwords(config.stopword_list_id)
    if args.input.is_dir():
        docs = load_corpus(args.input, config, stopwords=stopwords).documents
    else:
        docs = [decode_document(args.input)]
    vectors = analysis.vectorize(docs, n, config, stopwords)
    _emit(vectors_to_json(vectors) if args.format == "json" else dumps_vectors(vectors), args.out)


def _load_operand(path: Path, n: int | None, config: PipelineConfig) -> FeatureVector:
    if is_vector_store(path):
        vectors = load_vectors(path)
        if len(vectors) != 1:
            raise IgboSimError(f"{path}: expected exactly one stored vector, found {len(vectors)}")
        vec = vectors[0]
        if n is not None and vec.n != n:
            raise OrderMismatchError(f"{path}: stored vector has n={vec.n}, but --n {n} was requested")
        return vec
    doc = decode_document(path)
    stream = preprocess(doc.text, config, load_stopwords(config.stopword_list_id), doc.doc_id)
    return build_ngrams(stream, config.ngram_order if n is None else n)


def cmd_compare(args) -> None:
    config = _pipeline(args)
    n = args.n[0] if args.n else None
    a = _load_operand(args.doc_a, n, config)
    b = _load_operand(args.doc_b, n, config)
    result = compute(args.metric, a, b)
    _emit(f"{result.value:.{args.precision}f}\n", args.out)


def _corpus(args, config):
    return load_corpus(args.corpus, config, pattern=args.glob, fail_fast=not args.skip_bad)


def cmd_matrix(args) -> None:
    config = _pipeline(args)
    orders = args.n or [config.ngram_order]
    corpus = _corpus(args, config)
    rows, cols = corpus.subset(args.rows), corpus.subset(args.cols)
    matrices = [analysis.build_matrix(rows, cols, n, args.metric, config, corpus.stopword_list) for n in orders]
    if args.format == "json":
        if len(matrices) == 1:
            text = analysis.to_json(matrices[0])
        else:
            text = "[\n" + ",\n".join(analysis.to_json(m).rstrip("\n") for m in matrices) + "\n]\n"
    elif len(matrices) == 1:
        text = analysis.matrix_to_csv(matrices[0], args.precision)
    else:
        text = "\n".join(analysis.matrix_to_csv(m, args.precision, label=f"n={m.n}") for m in matrices)
    _emit(text, args.out)


def cmd_report(args) -> None:
    config = _pipeline(args)
    corpus = _corpus(args, config)
    report, _ = analysis.compare_orders(
        corpus, args.n or [1, 2], args.metric, config, corpus.stopword_list,
        row_ids=args.rows, col_ids=args.cols, exclude_self=args.exclude_self,
    )
    _emit(analysis.render(report, args.format, args.precision), args.out)


COMMANDS = {
    "preprocess": cmd_preprocess,
    "vectorize": cmd_vectorize,
    "compare": cmd_compare,
    "matrix": cmd_matrix,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        COMMANDS[args.command](args)
    except OrderMismatchError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except (IgboSimError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(main())


if __name__ == "__main__":
    run()
