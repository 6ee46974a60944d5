"""Command-line entry point for the simulated-analyst benchmark."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .corpus import load_jsonl, tokenize_corpus
from .featurize import EMBEDDING_AVERAGE, KEYWORD_HASHED, load_embedding_table
from .simharness import TASK_PRESETS, TaskSpec, run_task, summarize, write_results

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2

_MODE_FLAGS = {"keyword": KEYWORD_HASHED, "embedding": EMBEDDING_AVERAGE}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="si-eval",
        description=(
            "Simulate analysts dragging labeled documents to opposite corners,"
            " re-learn metric weights each iteration, and report k-NN accuracy."
        ),
    )
    parser.add_argument("--corpus", required=True, help="input corpus as JSONL")
    parser.add_argument(
        "--task",
        required=True,
        help=f"preset name ({', '.join(sorted(TASK_PRESETS))}) or two labels 'a,b'",
    )
    parser.add_argument(
        "--features", required=True, choices=sorted(_MODE_FLAGS), help="feature mode"
    )
    parser.add_argument("--glove", help="word-vector text file (embedding mode only)")
    parser.add_argument("--iters", type=int, default=10, help="interactions per run")
    parser.add_argument("--per-class", type=int, default=5, help="docs pinned per class per iteration")
    parser.add_argument("--runs", type=int, default=10, help="independent seeded runs")
    parser.add_argument("--seed", type=int, default=42, help="base seed; run r uses seed+r")
    parser.add_argument(
        "--lambda", dest="reg_lambda", type=float, default=0.5, help="proximal regularizer"
    )
    parser.add_argument("--folds", type=int, default=5, help="cross-validation folds")
    parser.add_argument("--k", type=int, default=3, help="k-NN neighborhood size")
    parser.add_argument("--out", required=True, help="output directory for CSV results")
    parser.add_argument(
        "--jobs", type=int, default=1, help="worker processes for runs; 0 = all cores"
    )
    return parser


def _resolve_task(raw: str) -> tuple[str, str, str]:
    """Map a preset name or an 'a,b' label pair to (name, class_a, class_b)."""
    if raw in TASK_PRESETS:
        a, b = TASK_PRESETS[raw]
        return raw, a, b
    if "," in raw:
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) == 2 and all(parts):
            return f"{parts[0]}-vs-{parts[1]}", parts[0], parts[1]
    raise ValueError(
        f"task {raw!r} is neither a preset ({', '.join(sorted(TASK_PRESETS))})"
        " nor a comma-separated label pair"
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags already; normalize anything else
        return EXIT_CONFIG if exc.code else EXIT_OK

    mode = _MODE_FLAGS[args.features]
    try:
        name, class_a, class_b = _resolve_task(args.task)
        if mode == EMBEDDING_AVERAGE and not args.glove:
            raise ValueError("embedding feature mode requires --glove")
        corpus_path = Path(args.corpus)
        if not corpus_path.is_file():
            raise ValueError(f"corpus file not found: {corpus_path}")
        if args.glove and not Path(args.glove).is_file():
            raise ValueError(f"word-vector file not found: {args.glove}")
        if args.jobs < 0:
            raise ValueError("--jobs must be >= 0")
        spec = TaskSpec(
            name=name,
            class_a=class_a,
            class_b=class_b,
            feature_mode=mode,
            docs_per_class_per_iter=args.per_class,
            iterations=args.iters,
            runs=args.runs,
            base_seed=args.seed,
            knn_k=args.k,
            cv_folds=args.folds,
            reg_lambda=args.reg_lambda,
        )
        corpus = tokenize_corpus(load_jsonl(corpus_path))
        # width is taken from the file so any vector table works unmodified
        embeddings = load_embedding_table(args.glove, dims=None) if args.glove else None
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    n_jobs = args.jobs if args.jobs >= 1 else (os.cpu_count() or 1)
    try:
        traces = run_task(spec, corpus, embeddings, n_jobs=n_jobs)
        summary = summarize(traces)
    except ValueError as exc:
        # run-phase ValueErrors all trace back to configuration (task labels
        # absent from the corpus, class too small, zero iterations)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    traces_path, summary_path = write_results([summary], traces, args.out)
    print(
        f"{summary.task} [{summary.feature_mode}]"
        f" final {summary.final_acc_mean:.3f} (std {summary.final_acc_std:.3f})"
        f" overall {summary.overall_acc_mean:.3f} (std {summary.overall_acc_std:.3f})"
    )
    print(f"wrote {traces_path} and {summary_path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
