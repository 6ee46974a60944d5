import { Vec2 } from "./types.js";

/** Hard ceiling on any layout transition. */
export const MAX_ANIMATION_MS = 500;
export const DEFAULT_ANIMATION_MS = 400;

export interface FrameScheduler {
  now(): number;
  schedule(callback: () => void): void;
}

/** requestAnimationFrame when the host provides it, 16 ms timers otherwise. */
export const defaultScheduler: FrameScheduler = {
  now: () => (typeof performance !== "undefined" ? performance.now() : Date.now()),
  schedule: (callback) => {
    if (typeof requestAnimationFrame === "function") {
      requestAnimationFrame(() => callback());
    } else {
      setTimeout(callback, 16);
    }
  },
};

const smoothstep = (t: number): number => t * t * (3 - 2 * t);

/**
 * Interpolate every point from `from` to `to`, calling onFrame per tick and a
 * final time with the exact targets. Duration is clamped to MAX_ANIMATION_MS.
 */
export function tween(
  from: Vec2[],
  to: Vec2[],
  onFrame: (positions: Vec2[]) => void,
  durationMs: number = DEFAULT_ANIMATION_MS,
  scheduler: FrameScheduler = defaultScheduler,
): Promise<void> {
  if (from.length !== to.length) {
    throw new Error(`tween endpoints differ in length: ${from.length} vs ${to.length}`);
  }
  const duration = Math.min(Math.max(durationMs, 0), MAX_ANIMATION_MS);
  const start = scheduler.now();
  return new Promise((resolve) => {
    const step = (): void => {
      const elapsed = scheduler.now() - start;
      if (duration <= 0 || elapsed >= duration) {
        onFrame(to.map((p) => ({ ...p })));
        resolve();
        return;
      }
      const t = smoothstep(elapsed / duration);
      onFrame(
        from.map((p, i) => ({
          x: p.x + (to[i].x - p.x) * t,
          y: p.y + (to[i].y - p.y) * t,
        })),
      );
      scheduler.schedule(step);
    };
    scheduler.schedule(step);
  });
}
