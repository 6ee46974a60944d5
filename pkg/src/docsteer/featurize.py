"""Document feature extraction: hashed TF-IDF vectors and averaged word embeddings.

Both modes produce an n x d matrix (d defaults to 300) that is min-max
normalized per dimension, so the two representations are interchangeable
inputs for the weighted-distance pipeline.
"""
from __future__ import annotations

import csv
import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .corpus import Corpus

logger = logging.getLogger(__name__)

KEYWORD_HASHED = "keyword_hashed"
EMBEDDING_AVERAGE = "embedding_average"
FEATURE_MODES = (KEYWORD_HASHED, EMBEDDING_AVERAGE)

DEFAULT_DIMS = 300

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64_MASK = 0xFFFFFFFFFFFFFFFF


@dataclass
class FeatureMatrix:
    """Per-document feature rows aligned to corpus document order."""

    mode: str
    dims: int
    rows: np.ndarray
    doc_ids: list[str]

    def __post_init__(self) -> None:
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.mode not in FEATURE_MODES:
            raise ValueError(f"unknown feature mode {self.mode!r}")
        if self.rows.ndim != 2 or self.rows.shape != (len(self.doc_ids), self.dims):
            raise ValueError(
                f"rows shape {self.rows.shape} does not match"
                f" {len(self.doc_ids)} docs x {self.dims} dims"
            )
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("feature rows contain non-finite entries")

    def __len__(self) -> int:
        return len(self.doc_ids)


@dataclass
class EmbeddingTable:
    """Token vectors stored as one matrix plus a token -> row lookup.

    Vectors are kept as float32 to halve the footprint of large pretrained
    tables; downstream averaging accumulates in float64.
    """

    dims: int
    vocab: dict[str, int]
    vectors: np.ndarray

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2 or self.vectors.shape != (len(self.vocab), self.dims):
            raise ValueError("vector matrix shape does not match vocab/dims")

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, token: str) -> bool:
        return token in self.vocab

    def vector(self, token: str) -> np.ndarray:
        return self.vectors[self.vocab[token]]


@lru_cache(maxsize=1 << 20)
def _fnv1a64(token: str) -> int:
    h = _FNV_OFFSET
    for byte in token.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _U64_MASK
    return h


def hash_token(token: str, dims: int) -> tuple[int, int]:
    """Map a token to a (bucket, sign) pair via FNV-1a 64 over its UTF-8 bytes.

    bucket = hash mod dims; sign is +1 when bit 63 of the hash is 0, else -1.
    Fully specified so results are bit-identical across platforms.
    """
    if not token:
        raise ValueError("token must be nonempty")
    if dims < 1:
        raise ValueError("dims must be >= 1")
    h = _fnv1a64(token)
    sign = 1 if (h >> 63) == 0 else -1
    return h % dims, sign


def minmax_normalize(matrix: np.ndarray) -> np.ndarray:
    """Rescale each column to [0, 1]; columns with zero spread become all zeros."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] < 1:
        raise ValueError("expected a nonempty 2-d matrix")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix contains non-finite entries")
    lo = matrix.min(axis=0)
    hi = matrix.max(axis=0)
    spread = hi - lo
    out = np.zeros_like(matrix)
    live = spread > 0
    out[:, live] = (matrix[:, live] - lo[live]) / spread[live]
    return out


def _require_tokenized(corpus: Corpus) -> None:
    missing = [d.id for d in corpus.documents if d.tokens is None]
    if missing:
        raise ValueError(
            f"corpus is not tokenized ({len(missing)} documents, first: {missing[0]!r})"
        )


def tfidf_hashed(corpus: Corpus, dims: int = DEFAULT_DIMS) -> FeatureMatrix:
    """Signed-hash TF-IDF features, min-max normalized per dimension.

    Per document, each distinct token with count c contributes
    (1 + ln c) * (ln((1 + N) / (1 + df)) + 1) times its hash sign into its
    hash bucket, where N is the corpus size and df the token's document
    frequency. The smoothed IDF keeps corpus-wide tokens finite.
    """
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    _require_tokenized(corpus)
    n = len(corpus)
    df: Counter[str] = Counter()
    for doc in corpus.documents:
        df.update(set(doc.tokens))
    rows = np.zeros((n, dims))
    for i, doc in enumerate(corpus.documents):
        for tok, count in Counter(doc.tokens).items():
            bucket, sign = hash_token(tok, dims)
            tf = 1.0 + math.log(count)
            idf = math.log((1.0 + n) / (1.0 + df[tok])) + 1.0
            rows[i, bucket] += sign * tf * idf
    return FeatureMatrix(
        mode=KEYWORD_HASHED, dims=dims, rows=minmax_normalize(rows), doc_ids=corpus.doc_ids
    )


def load_embedding_table(path: str | Path, dims: int | None = DEFAULT_DIMS) -> EmbeddingTable:
    """Parse a whitespace-separated embedding text file (word, then dims floats).

    dims=None infers the width from the first data line. Duplicate words keep
    their first vector; a warning is logged. Any line with the wrong field
    count raises, naming the line number.
    """
    path = Path(path)
    vocab: dict[str, int] = {}
    vectors: list[np.ndarray] = []
    duplicates = 0
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split(" ")
            if len(parts) == 1 and not parts[0]:
                continue
            if dims is None:
                dims = len(parts) - 1
                if dims < 1:
                    raise ValueError(f"{path}: line {lineno} has no vector values")
            if len(parts) != dims + 1:
                raise ValueError(
                    f"{path}: line {lineno} has {len(parts) - 1} values, expected {dims}"
                )
            word = parts[0]
            if word in vocab:
                duplicates += 1
                continue
            try:
                vec = np.array(parts[1:], dtype=np.float32)
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno} has a non-numeric value") from exc
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"{path}: line {lineno} has a non-finite value")
            vocab[word] = len(vectors)
            vectors.append(vec)
    if duplicates:
        logger.warning("%s: kept first vector for %d duplicate words", path, duplicates)
    if dims is None:
        raise ValueError(f"{path}: empty file, cannot infer vector width")
    matrix = np.vstack(vectors) if vectors else np.zeros((0, dims), dtype=np.float32)
    return EmbeddingTable(dims=dims, vocab=vocab, vectors=matrix)


def embed_average(
    corpus: Corpus, table: EmbeddingTable, dims: int | None = None
) -> tuple[FeatureMatrix, list[str]]:
    """Average in-vocabulary token vectors per document, then min-max normalize.

    Token repeats count toward the average; out-of-vocabulary tokens are
    skipped. Documents with no in-vocabulary token get the zero vector and
    their ids are returned as warnings.
    """
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    _require_tokenized(corpus)
    if dims is not None and dims != table.dims:
        raise ValueError(f"requested dims {dims} != embedding table dims {table.dims}")
    d = table.dims
    rows = np.zeros((len(corpus), d))
    all_oov: list[str] = []
    for i, doc in enumerate(corpus.documents):
        idx = [table.vocab[t] for t in doc.tokens if t in table.vocab]
        if idx:
            rows[i] = table.vectors[idx].mean(axis=0, dtype=np.float64)
        else:
            all_oov.append(doc.id)
    if all_oov:
        logger.warning(
            "%d documents had no in-vocabulary tokens (first: %s)", len(all_oov), all_oov[0]
        )
    fm = FeatureMatrix(
        mode=EMBEDDING_AVERAGE, dims=d, rows=minmax_normalize(rows), doc_ids=corpus.doc_ids
    )
    return fm, all_oov


def write_features_csv(features: FeatureMatrix, path: str | Path) -> None:
    """Debug export: one row per document with header doc_id,f0,...,f{d-1}."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id"] + [f"f{j}" for j in range(features.dims)])
        for doc_id, row in zip(features.doc_ids, features.rows):
            writer.writerow([doc_id] + [repr(float(v)) for v in row])
