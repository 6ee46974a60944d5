"""Generate a synthetic benchmark directory and run a quick two-mode demo.

Real corpora cannot ship with the repository, so this script fabricates a
drop-in substitute with the same file layout the benchmark checks expect:

    twenty_news.jsonl   six newsgroup-style labels, n docs per label
    vis_papers.jsonl    two paper-venue labels, n docs per label
    glove_300d.txt      word vectors for the synthetic vocabulary

The text model mirrors the regimes the engine is built for. Each
newsgroup-style class splits into four subtopics with large, disjoint
vocabularies, so two same-class documents share few exact words (weak
bag-of-words signal). Each subtopic pair is separated on its own small
block of vector dimensions, while a low-rank confound pollutes the rest,
so uniformly weighted vector averages start mediocre and per-dimension
reweighting has real signal to recover, one subtopic at a time, as pinned
documents accumulate. The venue-style classes use tiny, heavily repeated
vocabularies with well-separated word vectors, so both feature modes
classify them easily.

Usage:
    python3 scripts/demo_synthetic.py --out /tmp/synthbench [--per-class 60]
    DOCSTEER_BENCH_DIR=/tmp/synthbench pytest tests/test_acceptance.py -v
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from docsteer import (  # noqa: E402
    TASK_PRESETS,
    TaskSpec,
    load_embedding_table,
    load_jsonl,
    run_task,
    summarize,
    tokenize_corpus,
)

DIMS = 300
NEWS_TASKS = ("rec", "religion", "sys")
SUBTOPICS = 4
BLOCK = 8
POOL_PER_SUBTOPIC = 80
WORDS_PER_DOC = 12
SHARED_PER_DOC = 10
CLASS_GAP = 0.8
SIGNAL_NOISE = 0.35
BASE_NOISE = 0.15
CONFOUND_SCALE = 2.0
CONFOUND_RANK = 2


def _stem(label: str) -> str:
    return "".join(ch if ch.isalnum() else "x" for ch in label.lower())


def generate(out_dir: Path, per_class: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    vectors: dict[str, np.ndarray] = {}

    # one signal block per (task, subtopic); disjoint across the news tasks
    signal_dims = rng.permutation(DIMS)[: len(NEWS_TASKS) * SUBTOPICS * BLOCK]
    task_sig = {
        task: signal_dims[i * SUBTOPICS * BLOCK : (i + 1) * SUBTOPICS * BLOCK]
        for i, task in enumerate(NEWS_TASKS)
    }

    def confound(zero_dims: np.ndarray) -> np.ndarray:
        basis = rng.normal(size=(CONFOUND_RANK, DIMS)) * CONFOUND_SCALE
        basis[:, zero_dims] = 0.0
        return basis

    # shared filler words: confounded everywhere except the signal dims, so
    # they add nuisance variance without touching what must stay learnable
    common_basis = confound(signal_dims)
    noise_pool = [f"common{i:03d}" for i in range(300)]
    for word in noise_pool:
        vectors[word] = common_basis.T @ rng.normal(size=CONFOUND_RANK)
        vectors[word] += BASE_NOISE * rng.normal(size=DIMS)

    def news_docs(task: str) -> list[dict]:
        sig = task_sig[task]
        blocks = [sig[t * BLOCK : (t + 1) * BLOCK] for t in range(SUBTOPICS)]
        basis = confound(sig)
        iid = np.full(DIMS, BASE_NOISE)
        iid[sig] = SIGNAL_NOISE
        docs = []
        for side, label in enumerate(TASK_PRESETS[task]):
            pools = []
            for t in range(SUBTOPICS):
                center = np.zeros(DIMS)
                center[blocks[t]] = CLASS_GAP * (1.0 if side else -1.0) / 2.0
                pool = [f"{_stem(label)}s{t}w{i:03d}" for i in range(POOL_PER_SUBTOPIC)]
                for w in pool:
                    vectors[w] = center + basis.T @ rng.normal(size=CONFOUND_RANK)
                    vectors[w] += iid * rng.normal(size=DIMS)
                pools.append(pool)
            for i in range(per_class):
                pool = pools[i % SUBTOPICS]
                own = rng.choice(pool, size=WORDS_PER_DOC, replace=False).tolist()
                shared = rng.choice(noise_pool, size=SHARED_PER_DOC, replace=True).tolist()
                body = own + shared
                rng.shuffle(body)
                docs.append({"id": f"{label}-{i:03d}", "text": " ".join(body), "label": label})
        return docs

    def vis_docs() -> list[dict]:
        docs = []
        for label in TASK_PRESETS["vis"]:
            center = rng.normal(size=DIMS)
            center *= 2.0 / np.linalg.norm(center)
            pool = [f"{_stem(label)}w{i:02d}" for i in range(15)]
            for w in pool:
                vectors[w] = center + 0.3 * rng.normal(size=DIMS)
            for i in range(per_class):
                own = rng.choice(pool, size=8, replace=False).tolist()
                shared = rng.choice(noise_pool, size=SHARED_PER_DOC, replace=True).tolist()
                body = own + shared
                rng.shuffle(body)
                docs.append({"id": f"{label}-{i:03d}", "text": " ".join(body), "label": label})
        return docs

    def write_jsonl(path: Path, docs: list[dict]) -> None:
        with path.open("w", encoding="utf-8") as fh:
            for doc in docs:
                fh.write(json.dumps(doc) + "\n")

    write_jsonl(out_dir / "twenty_news.jsonl", [d for t in NEWS_TASKS for d in news_docs(t)])
    write_jsonl(out_dir / "vis_papers.jsonl", vis_docs())
    with (out_dir / "glove_300d.txt").open("w", encoding="utf-8") as fh:
        for word in sorted(vectors):
            fh.write(word + " " + " ".join(f"{v:.5f}" for v in vectors[word]) + "\n")
    print(f"wrote synthetic benchmark data to {out_dir}")


def quick_demo(out_dir: Path, jobs: int) -> None:
    corpus = tokenize_corpus(load_jsonl(out_dir / "twenty_news.jsonl"))
    table = load_embedding_table(out_dir / "glove_300d.txt", dims=None)
    a, b = TASK_PRESETS["rec"]
    for mode, embeddings in (("keyword_hashed", None), ("embedding_average", table)):
        spec = TaskSpec(
            name="rec", class_a=a, class_b=b, feature_mode=mode, iterations=3, runs=3
        )
        start = time.perf_counter()
        summary = summarize(run_task(spec, corpus, embeddings=embeddings, n_jobs=jobs))
        print(
            f"rec [{mode}] final {summary.final_acc_mean:.3f}"
            f" overall {summary.overall_acc_mean:.3f}"
            f" ({time.perf_counter() - start:.1f}s)"
        )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, help="directory to create")
    parser.add_argument("--per-class", type=int, default=60, help="documents per label")
    parser.add_argument("--seed", type=int, default=7, help="generator seed")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for the demo")
    parser.add_argument("--skip-demo", action="store_true", help="only write the files")
    args = parser.parse_args()
    if args.per_class < 50:
        print(
            "error: --per-class must be >= 50 (10 iterations pin 5 docs per class)",
            file=sys.stderr,
        )
        return 2
    out_dir = Path(args.out)
    generate(out_dir, args.per_class, args.seed)
    if not args.skip_demo:
        quick_demo(out_dir, args.jobs)
    return 0


if __name__ == "__main__":
    sys.exit(main())
