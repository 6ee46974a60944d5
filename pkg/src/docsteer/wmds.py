"""Forward projection (features + weights -> 2D layout) and inverse weight learning.

The forward direction minimizes raw stress between layout distances and
weighted feature-space distances by iterative majorization. The inverse
direction interprets a set of user-positioned documents: it finds simplex
weights whose feature-space distances best match the arranged layout
distances, with a proximal term that keeps updates incremental.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .featurize import FeatureMatrix
from .metric import WEIGHT_FLOOR, WeightVector, pairwise_weighted

logger = logging.getLogger(__name__)

SMACOF_MAX_ITER = 300
SMACOF_REL_TOL = 1e-6
INVERT_MAX_ITER = 500
INVERT_STEP_TOL = 1e-8
_MAX_HALVINGS = 60
_DEGENERATE_SPREAD = 1e-12


@dataclass
class Layout2D:
    """n x 2 positions in the unit square, aligned to doc_ids."""

    positions: np.ndarray
    doc_ids: list[str]

    def __post_init__(self) -> None:
        self.positions = np.asarray(self.positions, dtype=np.float64)
        if self.positions.ndim != 2 or self.positions.shape != (len(self.doc_ids), 2):
            raise ValueError(
                f"positions shape {self.positions.shape} does not match"
                f" {len(self.doc_ids)} doc ids x 2"
            )
        if not np.all(np.isfinite(self.positions)):
            raise ValueError("positions contain non-finite entries")
        if self.positions.size and (self.positions.min() < 0.0 or self.positions.max() > 1.0):
            raise ValueError("positions must lie in the unit square")

    def __len__(self) -> int:
        return len(self.doc_ids)

    def position_of(self, doc_id: str) -> np.ndarray:
        return self.positions[self.doc_ids.index(doc_id)]


@dataclass(frozen=True)
class Move:
    """One staged drag: a document and its target position in the unit square."""

    doc_id: str
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("move target must be finite")
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise ValueError(f"move target ({self.x}, {self.y}) outside the unit square")


@dataclass
class InteractionBatch:
    """A batch of drags; doc ids must be distinct within the batch."""

    moves: list[Move]

    def __post_init__(self) -> None:
        ids = [m.doc_id for m in self.moves]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate doc ids within an interaction batch")


def simplex_project(v: np.ndarray, eps: float = WEIGHT_FLOOR) -> WeightVector:
    """Euclidean projection onto the eps-floored probability simplex.

    Flooring is folded into the sorted-threshold algorithm by a change of
    variables: v - eps is projected onto the simplex of total mass 1 - eps*d
    and shifted back, which is the exact minimizer of ||w - v|| subject to
    w >= eps and sum(w) = 1. Entries at the floor come out exactly eps.
    """
    v = np.asarray(v, dtype=np.float64)
    d = v.size
    if d < 1:
        raise ValueError("empty vector")
    if eps * d >= 1.0:
        raise ValueError(f"eps={eps} infeasible for {d} dims (eps*d must be < 1)")

    mass = 1.0 - eps * d
    u = v - eps
    s = np.sort(u)[::-1]
    css = np.cumsum(s) - mass
    ks = np.arange(1, d + 1)
    rho = np.nonzero(s - css / ks > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return WeightVector(np.maximum(u - theta, 0.0) + eps)


def _check_aligned(features: FeatureMatrix, layout: Layout2D) -> None:
    if features.doc_ids != layout.doc_ids:
        raise ValueError("layout doc ids are not aligned to the feature matrix")


def stress(features: FeatureMatrix, w: WeightVector, layout: Layout2D) -> float:
    """Sum over pairs of squared gaps between layout and weighted feature distances."""
    _check_aligned(features, layout)
    delta = pairwise_weighted(features.rows, w)
    return _raw_stress(delta, layout.positions)


def _layout_distances(positions: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
    gram = positions @ positions.T
    diag = np.einsum("ii->i", gram)
    sq = np.add(diag[:, None], diag[None, :], out=out)
    sq -= 2.0 * gram
    np.maximum(sq, 0.0, out=sq)
    return np.sqrt(sq, out=sq)


def _raw_stress(delta: np.ndarray, positions: np.ndarray) -> float:
    return _stress_from(delta, _layout_distances(positions))


def _stress_from(delta: np.ndarray, dhat: np.ndarray) -> float:
    # both matrices are symmetric with zero diagonal, so the full-matrix sum
    # double counts every pair
    gaps = dhat - delta
    return float(np.einsum("ij,ij->", gaps, gaps)) / 2.0


def smacof(
    delta: np.ndarray,
    init: np.ndarray,
    max_iter: int = SMACOF_MAX_ITER,
    rel_tol: float = SMACOF_REL_TOL,
) -> tuple[np.ndarray, list[float]]:
    """Minimize raw stress by iterative majorization (Guttman transforms).

    Returns the final configuration and the stress history, whose first entry
    is the stress of ``init``. Stress is non-increasing across iterations.
    Stops when the relative stress decrease falls below rel_tol.
    """
    n = delta.shape[0]
    x = np.asarray(init, dtype=np.float64).copy()
    dhat = _layout_distances(x)
    ratio = np.empty_like(delta)
    history = [_stress_from(delta, dhat)]
    for _ in range(max_iter):
        ratio.fill(0.0)
        np.divide(delta, dhat, out=ratio, where=dhat > 0)
        b = np.negative(ratio, out=ratio)
        np.fill_diagonal(b, 0.0)
        np.fill_diagonal(b, -b.sum(axis=1))
        x = (b @ x) / n
        dhat = _layout_distances(x, out=dhat)
        s = _stress_from(delta, dhat)
        prev = history[-1]
        history.append(s)
        if prev <= 0.0 or (prev - s) / prev < rel_tol:
            break
    return x, history


def _torgerson_init(delta: np.ndarray, seed: int) -> np.ndarray:
    """Classical MDS on the distance matrix, plus a seeded tie-breaking jitter."""
    n = delta.shape[0]
    sq = delta * delta
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * j @ sq @ j
    eigvals, eigvecs = np.linalg.eigh(b)
    top = np.argsort(eigvals)[::-1][:2]
    lam = np.clip(eigvals[top], 0.0, None)
    x = np.zeros((n, 2))
    x[:, : top.size] = eigvecs[:, top] * np.sqrt(lam)
    rng = np.random.default_rng(seed)
    x += rng.normal(scale=1e-8 * max(delta.max(), 1e-30), size=x.shape)
    return x


def _procrustes_to(reference: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Rotate/reflect and translate x onto the reference (no scaling)."""
    ref_c = reference - reference.mean(axis=0)
    x_c = x - x.mean(axis=0)
    u, _, vt = np.linalg.svd(x_c.T @ ref_c)
    return x_c @ (u @ vt) + reference.mean(axis=0)


def _rescale_unit_square(x: np.ndarray) -> np.ndarray:
    """Affine map into [0,1]^2 with a single scale factor, centered per axis."""
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    widest = span.max()
    if widest <= 0.0:
        return np.full_like(x, 0.5)
    scaled = (x - lo) / widest
    scaled += (1.0 - span / widest) / 2.0
    return np.clip(scaled, 0.0, 1.0)


def forward_project(
    features: FeatureMatrix,
    w: WeightVector,
    init: Layout2D | None = None,
    seed: int = 0,
    max_iter: int = SMACOF_MAX_ITER,
    rel_tol: float = SMACOF_REL_TOL,
) -> Layout2D:
    """Project documents into the unit square so 2D distances track d_w.

    Starts from ``init`` when given (and Procrustes-aligns the result back to
    it for visual continuity), otherwise from classical MDS with a seeded
    tie-breaking jitter. The returned coordinates are rescaled into [0,1]^2
    preserving aspect ratio; stress guarantees refer to the optimizer's
    configuration, which the rescale only changes by a global affine map.
    """
    n = len(features)
    if n < 2:
        raise ValueError("forward projection needs at least 2 documents")
    if len(w) != features.dims:
        raise ValueError("weight length does not match feature dims")
    delta = pairwise_weighted(features.rows, w)
    if delta.max() <= _DEGENERATE_SPREAD:
        logger.warning("all weighted distances are zero; returning a single point layout")
        return Layout2D(np.full((n, 2), 0.5), features.doc_ids)
    if init is not None:
        _check_aligned(features, init)
        # unit-square coordinates are at an arbitrary scale relative to the
        # target distances; starting at the least-squares optimal scale saves
        # most majorization iterations on warm starts
        centered = init.positions - init.positions.mean(axis=0)
        d_init = _layout_distances(centered)
        denom = float(np.sum(d_init * d_init))
        if denom > 0.0:
            start = centered * (float(np.sum(d_init * delta)) / denom)
        else:
            start = _torgerson_init(delta, seed)
    else:
        start = _torgerson_init(delta, seed)
    x, _ = smacof(delta, start, max_iter=max_iter, rel_tol=rel_tol)
    if init is not None:
        x = _procrustes_to(init.positions, x)
    return Layout2D(_rescale_unit_square(x), features.doc_ids)


def _pair_data(
    features: FeatureMatrix, pinned: Sequence[tuple[str, Sequence[float]]]
) -> tuple[np.ndarray, np.ndarray]:
    """Squared per-dimension differences and layout distances for pinned pairs."""
    index = {doc_id: i for i, doc_id in enumerate(features.doc_ids)}
    ids = [doc_id for doc_id, _ in pinned]
    unknown = [i for i in ids if i not in index]
    if unknown:
        raise ValueError(f"unknown doc id {unknown[0]!r} in pinned set")
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate doc ids in pinned set")
    rows = features.rows[[index[i] for i in ids]]
    targets = np.array([[float(p[0]), float(p[1])] for _, p in pinned])
    iu, ju = np.triu_indices(len(ids), k=1)
    diffs = rows[iu] - rows[ju]
    sq_diffs = diffs * diffs
    layout_d = np.sqrt(np.sum((targets[iu] - targets[ju]) ** 2, axis=1))
    return sq_diffs, layout_d


def invert_weights(
    features: FeatureMatrix,
    pinned: Sequence[tuple[str, Sequence[float]]],
    w_prev: WeightVector,
    reg_lambda: float = 0.5,
    eps: float = WEIGHT_FLOOR,
    max_iter: int = INVERT_MAX_ITER,
    step_tol: float = INVERT_STEP_TOL,
) -> WeightVector:
    """Re-learn simplex weights from user-arranged document positions.

    Minimizes the mean squared gap between weighted feature distances of
    pinned pairs and their (scale-aligned) layout distances, plus a proximal
    term reg_lambda * ||w - w_prev||^2 that keeps refinement incremental.
    Projected gradient descent with per-step halving backtracking; the
    objective never rises above its value at w_prev.
    """
    if len(pinned) < 2:
        raise ValueError("need at least 2 pinned documents")
    if len(w_prev) != features.dims:
        raise ValueError("weight length does not match feature dims")
    sq_diffs, layout_d = _pair_data(features, pinned)
    n_pairs = layout_d.size

    d_prev = np.sqrt(sq_diffs @ w_prev.values)
    denom = layout_d @ layout_d
    scale = float(d_prev @ layout_d / denom) if denom > 0 else 1.0
    targets = scale * layout_d

    def objective(w: np.ndarray) -> float:
        gaps = np.sqrt(sq_diffs @ w) - targets
        return float(gaps @ gaps) / n_pairs + reg_lambda * float(
            np.sum((w - w_prev.values) ** 2)
        )

    def gradient(w: np.ndarray) -> np.ndarray:
        dw = np.sqrt(sq_diffs @ w)
        coef = np.divide(dw - targets, dw, out=np.zeros_like(dw), where=dw > 0)
        return (sq_diffs.T @ coef) / n_pairs + 2.0 * reg_lambda * (w - w_prev.values)

    w = w_prev.values.copy()
    j_cur = objective(w)
    for _ in range(max_iter):
        g = gradient(w)
        step = 1.0
        candidate = None
        for _ in range(_MAX_HALVINGS):
            trial = simplex_project(w - step * g, eps).values
            j_trial = objective(trial)
            if j_trial < j_cur:
                candidate = (trial, j_trial)
                break
            step /= 2.0
        if candidate is None:
            break
        w_new, j_cur = candidate
        moved = float(np.linalg.norm(w_new - w))
        w = w_new
        if moved < step_tol:
            break
    return WeightVector(w)
