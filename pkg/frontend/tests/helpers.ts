import { FetchLike } from "../src/api.js";
import { FrameScheduler } from "../src/animate.js";
import {
  InteractionResult,
  PinnedDoc,
  SessionSnapshot,
  TopWeights,
} from "../src/types.js";

export const EMPTY_WEIGHTS: TopWeights = { entries: [], approximate: false };

/** Snapshot with n docs on a diagonal, labels alternating a/b when labeled. */
export function makeSnapshot(n: number, labeled = true, pinned: PinnedDoc[] = []): SessionSnapshot {
  const docIds = Array.from({ length: n }, (_, i) => `d${i}`);
  return {
    session_id: "s1",
    corpus: "test",
    feature_mode: "keyword_hashed",
    revision: 0,
    doc_ids: docIds,
    labels: docIds.map((_, i) => (labeled ? (i % 2 === 0 ? "a" : "b") : null)),
    layout: docIds.map((_, i) => [i / Math.max(n - 1, 1), i / Math.max(n - 1, 1)]),
    pinned,
    top_weights: EMPTY_WEIGHTS,
    dims: 8,
  };
}

export function makeResult(n: number, revision: number, shift = 0.01): InteractionResult {
  return {
    revision,
    layout: Array.from({ length: n }, (_, i) => [
      Math.min(1, i / Math.max(n - 1, 1) + shift),
      Math.max(0, i / Math.max(n - 1, 1) - shift),
    ]),
    top_weights: {
      entries: [{ dim: 3, weight: 0.4, tokens: ["engine", "brake"] }],
      approximate: true,
    },
  };
}

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface MockFetch {
  fetchFn: FetchLike;
  calls: RecordedCall[];
  /** Calls whose URL contains the substring. */
  matching(fragment: string): RecordedCall[];
}

type Responder = (call: RecordedCall) => { status: number; body: unknown } | Promise<{ status: number; body: unknown }>;

/** fetch stub that records every call and answers via the responder. */
export function mockFetch(respond: Responder): MockFetch {
  const calls: RecordedCall[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const call: RecordedCall = {
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    };
    calls.push(call);
    const { status, body } = await respond(call);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls, matching: (fragment) => calls.filter((c) => c.url.includes(fragment)) };
}

/** Deterministic scheduler advancing a fixed step per frame. */
export class ManualScheduler implements FrameScheduler {
  time = 0;
  private queue: (() => void)[] = [];

  constructor(private readonly stepMs: number) {}

  now(): number {
    return this.time;
  }

  schedule(callback: () => void): void {
    this.queue.push(callback);
  }

  /** Run queued frames until none remain, advancing time each frame. */
  run(): void {
    let guard = 10_000;
    while (this.queue.length > 0 && guard-- > 0) {
      const frame = this.queue.shift()!;
      this.time += this.stepMs;
      frame();
    }
    if (guard <= 0) throw new Error("scheduler did not quiesce");
  }
}

/** Immediate scheduler: every tween completes in one macro step. */
export function instantScheduler(): FrameScheduler {
  let time = 0;
  return {
    now: () => time,
    schedule: (cb) => {
      time += 1_000;
      cb();
    },
  };
}

export function makeDom(): Document {
  document.body.innerHTML = `
    <div id="banner"></div>
    <svg id="plot" width="600" height="600"></svg>
    <div id="weights"></div>
    <div id="document"></div>
    <button id="submit"></button>
    <button id="reset"></button>
    <button id="release"></button>
    <span id="session-label"></span>
  `;
  return document;
}
