"""Shared fixtures: small labeled corpora and a word-vector file on disk."""
from __future__ import annotations

import numpy as np
import pytest

from docsteer import Corpus, Document, FeatureMatrix, tokenize_corpus
from docsteer.featurize import KEYWORD_HASHED


@pytest.fixture
def toy_corpus() -> Corpus:
    """Six tokenized docs in two topical classes."""
    docs = [
        Document("a1", "cars and engines roar on the highway", "autos"),
        Document("a2", "engine tuning and exhaust systems for cars", "autos"),
        Document("a3", "the highway patrol stopped the fast car", "autos"),
        Document("b1", "motorcycles lean into corners at speed", "bikes"),
        Document("b2", "riding a motorcycle requires a helmet", "bikes"),
        Document("b3", "the bike rally featured vintage motorcycles", "bikes"),
    ]
    return tokenize_corpus(Corpus(docs))


@pytest.fixture
def cat_dog_corpus() -> Corpus:
    """The 3-doc corpus used by the hand-computed tf-idf oracle."""
    docs = [
        Document("d1", "cat cat"),
        Document("d2", "cat dog"),
        Document("d3", "dog"),
    ]
    return tokenize_corpus(Corpus(docs))


@pytest.fixture
def vector_file(tmp_path):
    """A 2-dim word-vector table in the standard one-word-per-line text format."""
    path = tmp_path / "vectors.txt"
    path.write_text(
        "cat 0.0 1.0\n"
        "dog 1.0 0.0\n"
        "bird 0.5 0.5\n",
        encoding="utf-8",
    )
    return path


def synthetic_text_corpus(
    rng: np.random.Generator,
    n_per_class: int = 10,
    class_words: int = 12,
    shared_words: int = 12,
    tokens_per_doc: int = 16,
    noise_fraction: float = 0.25,
) -> Corpus:
    """Two-class corpus with disjoint class vocabularies plus shared noise."""
    pool_a = [f"alpha{i:02d}" for i in range(class_words)]
    pool_b = [f"beta{i:02d}" for i in range(class_words)]
    shared = [f"noise{i:02d}" for i in range(shared_words)]
    docs = []
    for label, pool, prefix in (("groupa", pool_a, "a"), ("groupb", pool_b, "b")):
        for i in range(n_per_class):
            n_noise = int(tokens_per_doc * noise_fraction)
            body = [pool[rng.integers(len(pool))] for _ in range(tokens_per_doc - n_noise)]
            body += [shared[rng.integers(len(shared))] for _ in range(n_noise)]
            docs.append(Document(f"{prefix}{i}", " ".join(body), label))
    return tokenize_corpus(Corpus(docs))


def block_features(
    rng: np.random.Generator,
    n_per_class: int = 6,
    dims: int = 8,
    block: tuple[int, ...] = (0, 1),
    gap: float = 0.9,
) -> tuple[FeatureMatrix, list[str]]:
    """Two classes separated only on `block` dims; other dims are shared noise.

    Returns the feature matrix (already in [0,1]) and the label list.
    """
    n = 2 * n_per_class
    rows = rng.uniform(0.0, 1.0, size=(n, dims))
    for d in block:
        rows[:n_per_class, d] = rng.uniform(0.0, 1.0 - gap, size=n_per_class)
        rows[n_per_class:, d] = rng.uniform(gap, 1.0, size=n_per_class)
    doc_ids = [f"a{i}" for i in range(n_per_class)] + [f"b{i}" for i in range(n_per_class)]
    labels = ["A"] * n_per_class + ["B"] * n_per_class
    return FeatureMatrix(KEYWORD_HASHED, dims, rows, doc_ids), labels
