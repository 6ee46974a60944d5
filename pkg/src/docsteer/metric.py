"""Weighted Euclidean distance, the weight-vector model, kNN, and cross-validation."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .featurize import FeatureMatrix

WEIGHT_FLOOR = 1e-6
_SUM_TOL = 1e-9


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative per-dimension weights on the probability simplex.

    Every entry is at least WEIGHT_FLOOR and the entries sum to one; the floor
    keeps dimensions recoverable under later updates.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("weights must be a nonempty 1-d vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("weights contain non-finite entries")
        if arr.min() < WEIGHT_FLOOR:
            raise ValueError(f"weight {arr.min()} below floor {WEIGHT_FLOOR}")
        if abs(arr.sum() - 1.0) > _SUM_TOL:
            raise ValueError(f"weights sum to {arr.sum()}, expected 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def uniform(cls, dims: int) -> "WeightVector":
        if dims < 1:
            raise ValueError("dims must be >= 1")
        return cls(np.full(dims, 1.0 / dims))

    def __len__(self) -> int:
        return self.values.size


def _weights_array(w: WeightVector | np.ndarray) -> np.ndarray:
    if isinstance(w, WeightVector):
        return w.values
    return np.asarray(w, dtype=np.float64)


def weighted_distance(x: np.ndarray, y: np.ndarray, w: WeightVector | np.ndarray) -> float:
    """sqrt(sum_k w_k (x_k - y_k)^2). Raw arrays are accepted for w so scaling
    properties can be exercised; rankings are invariant to positive rescaling."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    wv = _weights_array(w)
    if x.shape != y.shape or x.shape != wv.shape:
        raise ValueError(f"shape mismatch: x {x.shape}, y {y.shape}, w {wv.shape}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("non-finite input")
    d = x - y
    return float(np.sqrt((d * d) @ wv))


def pairwise_weighted(rows: np.ndarray, w: WeightVector | np.ndarray) -> np.ndarray:
    """Full n x n weighted-distance matrix via the scaled-gram identity."""
    scaled = np.asarray(rows, dtype=np.float64) * np.sqrt(_weights_array(w))
    sq = np.sum(scaled * scaled, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (scaled @ scaled.T)
    np.maximum(d2, 0.0, out=d2)
    d2 = 0.5 * (d2 + d2.T)
    np.fill_diagonal(d2, 0.0)
    return np.sqrt(d2)


def _cross_weighted_sq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances between pre-scaled row blocks."""
    sa = np.sum(a * a, axis=1)
    sb = np.sum(b * b, axis=1)
    d2 = sa[:, None] + sb[None, :] - 2.0 * (a @ b.T)
    np.maximum(d2, 0.0, out=d2)
    return d2


def _vote(candidate_labels: Sequence[str]) -> str:
    """Majority label among neighbors ordered nearest-first.

    Count ties are resolved by walking the neighbors nearest-first and taking
    the first one whose label is among the tied leaders, so the single nearest
    neighbor decides whenever its label is in contention.
    """
    counts = Counter(candidate_labels)
    top = max(counts.values())
    leaders = {label for label, c in counts.items() if c == top}
    if len(leaders) == 1:
        return next(iter(leaders))
    for label in candidate_labels:
        if label in leaders:
            return label
    raise AssertionError("unreachable: leaders drawn from candidate labels")


def knn_predict(
    train_rows: np.ndarray,
    train_labels: Sequence[str],
    query: np.ndarray,
    k: int,
    w: WeightVector | np.ndarray,
) -> str:
    """Majority label of the k nearest training rows under the weighted metric.

    Distance ties are broken by lower training-row index (stable sort);
    majority ties by the nearest contending neighbor.
    """
    train_rows = np.asarray(train_rows, dtype=np.float64)
    if train_rows.ndim != 2 or train_rows.shape[0] == 0:
        raise ValueError("training set is empty")
    if len(train_labels) != train_rows.shape[0]:
        raise ValueError("labels not aligned to training rows")
    if not 1 <= k <= train_rows.shape[0]:
        raise ValueError(f"k={k} out of range for {train_rows.shape[0]} training rows")
    wv = _weights_array(w)
    diff = train_rows - np.asarray(query, dtype=np.float64)
    sq = (diff * diff) @ wv
    order = np.argsort(sq, kind="stable")[:k]
    return _vote([train_labels[i] for i in order])


def _stratified_folds(labels: Sequence[str], folds: int, seed: int) -> np.ndarray:
    """Fold index per document from a seeded per-class shuffle."""
    labels_arr = np.asarray(labels, dtype=object)
    rng = np.random.default_rng(seed)
    assignment = np.full(len(labels_arr), -1, dtype=np.int64)
    for label in sorted(set(labels_arr)):
        idx = np.flatnonzero(labels_arr == label)
        if idx.size < folds:
            raise ValueError(
                f"class {label!r} has {idx.size} documents, fewer than {folds} folds"
            )
        perm = rng.permutation(idx)
        assignment[perm] = np.arange(perm.size) % folds
    return assignment


def cv_accuracy(
    features: FeatureMatrix | np.ndarray,
    labels: Sequence[str],
    w: WeightVector | np.ndarray,
    k: int = 3,
    folds: int = 5,
    seed: int = 0,
) -> float:
    """Mean accuracy of stratified k-fold kNN classification under weights w.

    Fold assignment comes from a seeded per-class shuffle, so the value is
    deterministic given the seed. Each held-out row is classified against all
    remaining rows with the same vote rule as knn_predict.
    """
    rows = features.rows if isinstance(features, FeatureMatrix) else np.asarray(features)
    rows = np.asarray(rows, dtype=np.float64)
    if rows.shape[0] != len(labels):
        raise ValueError("labels not aligned to feature rows")
    assignment = _stratified_folds(labels, folds, seed)
    labels_list = list(labels)
    scaled = rows * np.sqrt(_weights_array(w))
    fold_acc = np.empty(folds)
    for f in range(folds):
        test_idx = np.flatnonzero(assignment == f)
        train_idx = np.flatnonzero(assignment != f)
        if k > train_idx.size:
            raise ValueError(f"k={k} exceeds training size {train_idx.size} in fold {f}")
        d2 = _cross_weighted_sq(scaled[test_idx], scaled[train_idx])
        correct = 0
        for r, ti in enumerate(test_idx):
            order = np.argsort(d2[r], kind="stable")[:k]
            predicted = _vote([labels_list[train_idx[j]] for j in order])
            correct += predicted == labels_list[ti]
        fold_acc[f] = correct / test_idx.size
    return float(fold_acc.mean())
