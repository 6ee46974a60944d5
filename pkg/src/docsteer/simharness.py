"""Simulated-analyst benchmark: scripted drags drive the learn-project loop.

Each run pins a growing set of labeled documents at opposite unit-square
corners, re-learns weights after every batch, and records k-NN
cross-validation accuracy in the re-weighted feature space. Results are
aggregated over seeded runs and written as CSV traces and summaries.
"""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus, task_subset, tokenize_corpus
from .featurize import (
    EMBEDDING_AVERAGE,
    FEATURE_MODES,
    KEYWORD_HASHED,
    EmbeddingTable,
    FeatureMatrix,
    embed_average,
    tfidf_hashed,
)
from .metric import WeightVector, cv_accuracy
from .wmds import InteractionBatch, Move, forward_project, invert_weights

logger = logging.getLogger(__name__)

TASK_PRESETS: dict[str, tuple[str, str]] = {
    "rec": ("rec.autos", "rec.motorcycles"),
    "religion": ("talk.religion.misc", "soc.religion.christian"),
    "sys": ("comp.sys.mac.hardware", "comp.sys.ibm.pc.hardware"),
    "vis": ("InfoVis", "VAST"),
}

TRACE_COLUMNS = ["task", "mode", "run_seed", "iteration", "accuracy"]
SUMMARY_COLUMNS = ["task", "mode", "final_mean", "final_std", "overall_mean", "overall_std"]


@dataclass(frozen=True)
class TaskSpec:
    """A two-class steering scenario and the knobs of its simulation."""

    name: str
    class_a: str
    class_b: str
    feature_mode: str
    corner_a: tuple[float, float] = (0.0, 0.0)
    corner_b: tuple[float, float] = (1.0, 1.0)
    docs_per_class_per_iter: int = 5
    iterations: int = 10
    runs: int = 10
    base_seed: int = 42
    knn_k: int = 3
    cv_folds: int = 5
    reg_lambda: float = 0.5
    cumulative_pins: bool = True

    def __post_init__(self) -> None:
        if self.feature_mode not in FEATURE_MODES:
            raise ValueError(f"unknown feature mode {self.feature_mode!r}")
        if self.class_a == self.class_b:
            raise ValueError("class labels must differ")
        if self.corner_a == self.corner_b:
            raise ValueError("corner positions must be distinct")
        if self.docs_per_class_per_iter < 1:
            raise ValueError("docs_per_class_per_iter must be >= 1")
        if self.iterations < 0 or self.runs < 1:
            raise ValueError("iterations must be >= 0 and runs >= 1")
        if self.reg_lambda < 0:
            raise ValueError("reg_lambda must be non-negative")


@dataclass(frozen=True)
class AccuracyTrace:
    """Per-iteration accuracies of one seeded run."""

    task: str
    feature_mode: str
    run_seed: int
    per_iteration: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(not (0.0 <= a <= 1.0) for a in self.per_iteration):
            raise ValueError("accuracies must lie in [0, 1]")


@dataclass(frozen=True)
class SummaryRow:
    """Mean/std of final-iteration and all-iteration accuracies over runs."""

    task: str
    feature_mode: str
    final_acc_mean: float
    final_acc_std: float
    overall_acc_mean: float
    overall_acc_std: float


@dataclass
class RunState:
    """Mutable per-run bookkeeping: what is still unmoved, what is pinned."""

    spec: TaskSpec
    unmoved_a: list[str]
    unmoved_b: list[str]
    pinned: list[tuple[str, tuple[float, float]]] = field(default_factory=list)


def sample_interaction(state: RunState, rng: np.random.Generator) -> InteractionBatch:
    """Draw the next batch: fixed count per class, without replacement."""
    per = state.spec.docs_per_class_per_iter
    moves: list[Move] = []
    for unmoved, corner, label in (
        (state.unmoved_a, state.spec.corner_a, state.spec.class_a),
        (state.unmoved_b, state.spec.corner_b, state.spec.class_b),
    ):
        if len(unmoved) < per:
            raise ValueError(
                f"class {label!r} exhausted: {len(unmoved)} unmoved docs, need {per}"
            )
        picks = sorted(rng.choice(len(unmoved), size=per, replace=False).tolist())
        moves.extend(Move(unmoved[i], corner[0], corner[1]) for i in picks)
        for i in reversed(picks):
            del unmoved[i]
    return InteractionBatch(moves)


def _build_features(
    spec: TaskSpec, subset: Corpus, embeddings: EmbeddingTable | None
) -> FeatureMatrix:
    if spec.feature_mode == KEYWORD_HASHED:
        return tfidf_hashed(subset)
    if embeddings is None:
        raise ValueError("embedding feature mode requires an embedding table")
    features, all_oov = embed_average(subset, embeddings)
    if all_oov:
        logger.warning("task %s: %d documents had no in-vocabulary tokens", spec.name, len(all_oov))
    return features


def _single_run(
    spec: TaskSpec,
    features: FeatureMatrix,
    labels: list[str],
    ids_a: list[str],
    ids_b: list[str],
    run_index: int,
) -> AccuracyTrace:
    seed = spec.base_seed + run_index
    rng = np.random.default_rng(seed)
    state = RunState(spec, list(ids_a), list(ids_b))
    w = WeightVector.uniform(features.dims)
    layout = forward_project(features, w, seed=seed)
    accuracies = []
    for _ in range(spec.iterations):
        batch = sample_interaction(state, rng)
        new_pins = [(m.doc_id, (m.x, m.y)) for m in batch.moves]
        if spec.cumulative_pins:
            state.pinned.extend(new_pins)
        else:
            state.pinned = new_pins
        w = invert_weights(features, state.pinned, w, reg_lambda=spec.reg_lambda)
        acc = cv_accuracy(
            features, labels, w, k=spec.knn_k, folds=spec.cv_folds, seed=seed
        )
        layout = forward_project(features, w, init=layout, seed=seed)
        accuracies.append(acc)
    logger.info(
        "task %s mode %s run seed %d: final accuracy %s",
        spec.name,
        spec.feature_mode,
        seed,
        f"{accuracies[-1]:.3f}" if accuracies else "n/a",
    )
    return AccuracyTrace(spec.name, spec.feature_mode, seed, tuple(accuracies))


def run_task(
    spec: TaskSpec,
    corpus: Corpus,
    embeddings: EmbeddingTable | None = None,
    n_jobs: int = 1,
) -> list[AccuracyTrace]:
    """Simulate `runs` seeded analysts on one task; return their accuracy traces.

    Runs are independent given the shared feature matrix, so n_jobs > 1
    distributes them over worker processes; results are collected in seed
    order either way, so the output is identical.
    """
    subset = task_subset(corpus, spec.class_a, spec.class_b)
    if not subset.is_tokenized():
        subset = tokenize_corpus(subset)
    smaller = min(subset.labels().count(spec.class_a), subset.labels().count(spec.class_b))
    need = spec.iterations * spec.docs_per_class_per_iter
    if need > smaller:
        raise ValueError(
            f"task {spec.name!r} needs {need} docs per class but the smaller"
            f" class has only {smaller}"
        )
    features = _build_features(spec, subset, embeddings)
    labels = subset.labels()
    ids_a = [d.id for d in subset.documents if d.label == spec.class_a]
    ids_b = [d.id for d in subset.documents if d.label == spec.class_b]

    if n_jobs < 1:
        raise ValueError("n_jobs must be >= 1")
    if n_jobs == 1 or spec.runs == 1:
        return [
            _single_run(spec, features, labels, ids_a, ids_b, r)
            for r in range(spec.runs)
        ]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=min(n_jobs, spec.runs)) as pool:
        args = [(spec, features, labels, ids_a, ids_b, r) for r in range(spec.runs)]
        return list(pool.map(_single_run, *zip(*args)))


def _sample_std(values: np.ndarray) -> float:
    return float(np.std(values, ddof=1)) if values.size > 1 else 0.0


def summarize(traces: list[AccuracyTrace]) -> SummaryRow:
    """Collapse one task's traces into final/overall mean and sample std."""
    if not traces:
        raise ValueError("cannot summarize an empty trace list")
    tasks = {t.task for t in traces}
    modes = {t.feature_mode for t in traces}
    lengths = {len(t.per_iteration) for t in traces}
    if len(tasks) > 1 or len(modes) > 1:
        raise ValueError("traces mix tasks or feature modes")
    if len(lengths) > 1:
        raise ValueError("traces have mismatched lengths")
    if next(iter(lengths)) == 0:
        raise ValueError("no iterations: traces are empty")
    finals = np.array([t.per_iteration[-1] for t in traces])
    alls = np.concatenate([np.asarray(t.per_iteration) for t in traces])
    return SummaryRow(
        task=traces[0].task,
        feature_mode=traces[0].feature_mode,
        final_acc_mean=float(finals.mean()),
        final_acc_std=_sample_std(finals),
        overall_acc_mean=float(alls.mean()),
        overall_acc_std=_sample_std(alls),
    )


def write_results(
    summaries: list[SummaryRow], traces: list[AccuracyTrace], out_dir: str | Path
) -> tuple[Path, Path]:
    """Write traces.csv and summary.csv with a deterministic row order."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    traces_path = out / "traces.csv"
    summary_path = out / "summary.csv"

    with traces_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        ordered = sorted(traces, key=lambda t: (t.task, t.feature_mode, t.run_seed))
        for t in ordered:
            for i, acc in enumerate(t.per_iteration, start=1):
                writer.writerow([t.task, t.feature_mode, t.run_seed, i, repr(acc)])

    with summary_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for s in sorted(summaries, key=lambda s: (s.task, s.feature_mode)):
            writer.writerow(
                [
                    s.task,
                    s.feature_mode,
                    repr(s.final_acc_mean),
                    repr(s.final_acc_std),
                    repr(s.overall_acc_mean),
                    repr(s.overall_acc_std),
                ]
            )
    return traces_path, summary_path


def load_traces(path: str | Path) -> list[AccuracyTrace]:
    """Rebuild AccuracyTrace values from a traces.csv file."""
    rows = []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != TRACE_COLUMNS:
            raise ValueError(f"unexpected traces header: {reader.fieldnames}")
        for row in reader:
            rows.append(
                (
                    row["task"],
                    row["mode"],
                    int(row["run_seed"]),
                    int(row["iteration"]),
                    float(row["accuracy"]),
                )
            )
    grouped: dict[tuple[str, str, int], list[tuple[int, float]]] = {}
    for task, mode, seed, iteration, acc in rows:
        grouped.setdefault((task, mode, seed), []).append((iteration, acc))
    traces = []
    for (task, mode, seed), entries in grouped.items():
        entries.sort()
        traces.append(AccuracyTrace(task, mode, seed, tuple(a for _, a in entries)))
    return traces
