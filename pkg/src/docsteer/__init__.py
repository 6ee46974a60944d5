"""Interactive distance-metric learning for document collections.

Documents are embedded as feature vectors (hashed TF-IDF or averaged word
vectors), projected to 2D under a learnable weighted Euclidean metric, and
the weights are re-learned from where an analyst drags documents. A
simulated-analyst harness benchmarks both feature modes, and an HTTP service
exposes the loop to interactive clients.
"""
from .corpus import (
    Corpus,
    Document,
    load_jsonl,
    task_subset,
    tokenize,
    tokenize_corpus,
)
from .featurize import (
    EMBEDDING_AVERAGE,
    KEYWORD_HASHED,
    EmbeddingTable,
    FeatureMatrix,
    embed_average,
    hash_token,
    load_embedding_table,
    minmax_normalize,
    tfidf_hashed,
)
from .metric import WeightVector, cv_accuracy, knn_predict, pairwise_weighted, weighted_distance
from .simharness import (
    TASK_PRESETS,
    AccuracyTrace,
    RunState,
    SummaryRow,
    TaskSpec,
    load_traces,
    run_task,
    sample_interaction,
    summarize,
    write_results,
)
from .wmds import (
    InteractionBatch,
    Layout2D,
    Move,
    forward_project,
    invert_weights,
    simplex_project,
    smacof,
    stress,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyTrace",
    "Corpus",
    "Document",
    "EMBEDDING_AVERAGE",
    "EmbeddingTable",
    "FeatureMatrix",
    "InteractionBatch",
    "KEYWORD_HASHED",
    "Layout2D",
    "Move",
    "RunState",
    "SummaryRow",
    "TASK_PRESETS",
    "TaskSpec",
    "WeightVector",
    "cv_accuracy",
    "embed_average",
    "forward_project",
    "hash_token",
    "invert_weights",
    "knn_predict",
    "load_embedding_table",
    "load_jsonl",
    "load_traces",
    "minmax_normalize",
    "pairwise_weighted",
    "run_task",
    "sample_interaction",
    "simplex_project",
    "smacof",
    "stress",
    "summarize",
    "task_subset",
    "tfidf_hashed",
    "tokenize",
    "tokenize_corpus",
    "weighted_distance",
    "write_results",
]
