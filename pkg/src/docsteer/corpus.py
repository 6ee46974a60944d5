"""Labeled document collections: JSONL ingestion, tokenization, binary task subsets.

The canonical input format is JSONL with one object per line carrying "id"
and "text" (and optionally "label"). Converters from dataset-specific layouts
are documented recipes in the README, not code paths, so the engine stays
dataset-agnostic.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

# Maximal runs of Unicode letters/digits. \w also matches underscore, which is
# neither, so it is carved out.
_TOKEN_RE = re.compile(r"[^\W_]+")

_MIN_TOKEN_LEN = 2


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The bundled English stopword list, one lowercase token per line."""
    text = resources.files("docsteer.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


@lru_cache(maxsize=1)
def crescent_groundtruth() -> dict[str, list[str]]:
    """Demo metadata: report-id membership lists for the bundled intelligence demo."""
    raw = resources.files("docsteer.data").joinpath("crescent_groundtruth.json").read_text("utf-8")
    return json.loads(raw)


def tokenize(text: str) -> list[str]:
    """Split text into lowercase alphanumeric runs, dropping short tokens and stopwords.

    The text is lowercased first, then maximal runs of Unicode letters/digits
    are extracted. Tokens shorter than two characters and tokens on the
    bundled stopword list are dropped. Order and repeats are preserved.
    """
    sw = stopwords()
    return [
        tok
        for tok in _TOKEN_RE.findall(text.lower())
        if len(tok) >= _MIN_TOKEN_LEN and tok not in sw
    ]


@dataclass
class Document:
    """A single text unit. ``tokens`` is None until the corpus is tokenized."""

    id: str
    text: str
    label: str | None = None
    tokens: list[str] | None = None


@dataclass
class Corpus:
    """An ordered, immutable-by-convention collection of documents."""

    documents: list[Document] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for doc in self.documents:
            if not doc.id:
                raise ValueError("document id must be nonempty")
            if doc.id in seen:
                raise ValueError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def label_set(self) -> set[str]:
        return {doc.label for doc in self.documents if doc.label is not None}

    @property
    def doc_ids(self) -> list[str]:
        return [doc.id for doc in self.documents]

    def labels(self) -> list[str | None]:
        return [doc.label for doc in self.documents]

    def is_tokenized(self) -> bool:
        return all(doc.tokens is not None for doc in self.documents)


def load_jsonl(path: str | Path) -> Corpus:
    """Load a corpus from a JSONL file, one document object per line.

    Each line must be a JSON object with string "id" and "text" keys and an
    optional string "label". Blank lines are ignored. Line order is preserved;
    it is the determinism anchor for everything downstream.
    """
    path = Path(path)
    docs: list[Document] = []
    seen: dict[str, int] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: malformed JSON on line {lineno}: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise ValueError(f"{path}: line {lineno} is not a JSON object")
            doc_id = obj.get("id")
            text = obj.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise ValueError(f"{path}: line {lineno} missing nonempty string 'id'")
            if not isinstance(text, str):
                raise ValueError(f"{path}: line {lineno} missing string 'text'")
            label = obj.get("label")
            if label is not None and not isinstance(label, str):
                raise ValueError(f"{path}: line {lineno} has non-string 'label'")
            if doc_id in seen:
                raise ValueError(
                    f"{path}: duplicate id {doc_id!r} on line {lineno}"
                    f" (first seen on line {seen[doc_id]})"
                )
            seen[doc_id] = lineno
            docs.append(Document(id=doc_id, text=text, label=label))
    return Corpus(docs)


def tokenize_corpus(corpus: Corpus) -> Corpus:
    """Return a new corpus with every document's token list filled in."""
    return Corpus(
        [
            Document(id=d.id, text=d.text, label=d.label, tokens=tokenize(d.text))
            for d in corpus.documents
        ]
    )


def task_subset(corpus: Corpus, class_a: str, class_b: str) -> Corpus:
    """Slice out the documents labeled ``class_a`` or ``class_b``, in original order."""
    if class_a == class_b:
        raise ValueError(f"class labels must differ, got {class_a!r} twice")
    available = corpus.label_set
    for label in (class_a, class_b):
        if label not in available:
            raise ValueError(
                f"unknown label {label!r}; available labels: {sorted(available)}"
            )
    docs = [
        Document(id=d.id, text=d.text, label=d.label, tokens=d.tokens)
        for d in corpus.documents
        if d.label in (class_a, class_b)
    ]
    return Corpus(docs)
