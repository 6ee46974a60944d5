"""Run the full simulated-analyst comparison: 4 tasks x 2 feature modes.

Expects a data directory (flag or DOCSTEER_BENCH_DIR) containing:

    twenty_news.jsonl   newsgroup posts as JSONL (id, text, label)
    vis_papers.jsonl    paper abstracts as JSONL with InfoVis/VAST labels
    glove_300d.txt      word vectors, one "token v1 ... v300" line each

Per task and mode, traces.csv and summary.csv land in <out>/<task>_<mode>/
and are reused on rerun unless --force is given. A combined table prints at
the end. The README documents how to build the three data files.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from docsteer import (  # noqa: E402
    TASK_PRESETS,
    TaskSpec,
    load_embedding_table,
    load_jsonl,
    load_traces,
    run_task,
    summarize,
    tokenize_corpus,
    write_results,
)
from docsteer.featurize import EMBEDDING_AVERAGE, KEYWORD_HASHED  # noqa: E402

NEWS_FILE = "twenty_news.jsonl"
VIS_FILE = "vis_papers.jsonl"
VECTORS_FILE = "glove_300d.txt"
ALL_TASKS = ("rec", "religion", "sys", "vis")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--data-dir",
        default=os.environ.get("DOCSTEER_BENCH_DIR"),
        help="directory with the corpus and vector files (default: $DOCSTEER_BENCH_DIR)",
    )
    parser.add_argument("--out", help="results directory (default: <data-dir>/results)")
    parser.add_argument(
        "--tasks", default=",".join(ALL_TASKS), help="comma-separated subset of tasks"
    )
    parser.add_argument("--jobs", type=int, default=0, help="worker processes; 0 = all cores")
    parser.add_argument("--force", action="store_true", help="recompute even if cached")
    args = parser.parse_args()

    if not args.data_dir:
        print("error: pass --data-dir or set DOCSTEER_BENCH_DIR", file=sys.stderr)
        return 2
    data_dir = Path(args.data_dir)
    tasks = [t.strip() for t in args.tasks.split(",") if t.strip()]
    unknown = [t for t in tasks if t not in ALL_TASKS]
    if unknown:
        print(f"error: unknown tasks {unknown}; choose from {ALL_TASKS}", file=sys.stderr)
        return 2
    needed = {VIS_FILE if t == "vis" else NEWS_FILE for t in tasks} | {VECTORS_FILE}
    missing = [f for f in sorted(needed) if not (data_dir / f).is_file()]
    if missing:
        print(f"error: {data_dir} is missing {', '.join(missing)}", file=sys.stderr)
        return 2
    out_root = Path(args.out) if args.out else data_dir / "results"
    n_jobs = args.jobs if args.jobs >= 1 else (os.cpu_count() or 1)

    corpora: dict[str, object] = {}
    vectors = None
    rows = []
    for task in tasks:
        src_name = VIS_FILE if task == "vis" else NEWS_FILE
        for mode in (KEYWORD_HASHED, EMBEDDING_AVERAGE):
            cache = out_root / f"{task}_{mode}"
            traces_path = cache / "traces.csv"
            if traces_path.is_file() and not args.force:
                summary = summarize(load_traces(traces_path))
                rows.append(summary)
                print(f"{task} [{mode}]: cached ({traces_path})")
                continue
            if src_name not in corpora:
                print(f"loading {src_name} ...")
                corpora[src_name] = tokenize_corpus(load_jsonl(data_dir / src_name))
            table = None
            if mode == EMBEDDING_AVERAGE:
                if vectors is None:
                    print(f"loading {VECTORS_FILE} ...")
                    vectors = load_embedding_table(data_dir / VECTORS_FILE, dims=None)
                table = vectors
            a, b = TASK_PRESETS[task]
            spec = TaskSpec(name=task, class_a=a, class_b=b, feature_mode=mode)
            start = time.perf_counter()
            traces = run_task(spec, corpora[src_name], embeddings=table, n_jobs=n_jobs)
            elapsed = time.perf_counter() - start
            summary = summarize(traces)
            write_results([summary], traces, cache)
            (cache / "seconds.txt").write_text(f"{elapsed!r}\n")
            rows.append(summary)
            print(f"{task} [{mode}]: {elapsed:.0f}s, final {summary.final_acc_mean:.3f}")

    print(f"\n{'task':<10} {'mode':<20} {'final':>12} {'overall':>12}")
    for s in rows:
        print(
            f"{s.task:<10} {s.feature_mode:<20}"
            f" {s.final_acc_mean:.3f} ({s.final_acc_std:.3f})"
            f" {s.overall_acc_mean:.3f} ({s.overall_acc_std:.3f})"
        )
    for task in tasks:
        pair = {s.feature_mode: s for s in rows if s.task == task}
        if len(pair) == 2:
            gap = pair[EMBEDDING_AVERAGE].overall_acc_mean - pair[KEYWORD_HASHED].overall_acc_mean
            print(f"{task}: overall gap (embedding - keyword) {gap:+.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
