"""Igbo text preprocessing, word n-gram vectors and document similarity."""

from igbosim.analysis import (
    ComparisonReport,
    DistanceMatrix,
    build_matrix,
    compare_matrices,
    compare_orders,
    export,
    nearest_document,
    row_average,
)
from igbosim.corpus import Corpus, RawDocument, decode_document, encode_document, load_corpus, load_vectors, save_vectors
from igbosim.ngrams import FeatureVector, build_ngrams, vocabulary_union
from igbosim.preprocessing import (
    PipelineConfig,
    StopWordList,
    TokenStream,
    load_config,
    load_stopwords,
    normalize,
    preprocess,
    remove_stopwords,
    tokenize,
)
from igbosim.similarity import (
    MetricKind,
    MetricValue,
    compute,
    cosine_similarity,
    dice_similarity,
    dot,
    euclidean_distance,
    jaccard_similarity,
)

__version__ = "0.1.0"
