import { describe, expect, it } from "vitest";

import { ViewState } from "../src/state.js";
import { makeResult, makeSnapshot } from "./helpers.js";

describe("ViewState.fromSnapshot", () => {
  it("aligns docs, labels, and layout to doc_ids", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    expect(state.order).toEqual(["d0", "d1", "d2"]);
    expect(state.docs.get("d1")!.position).toEqual({ x: 0.5, y: 0.5 });
    expect(state.docs.get("d0")!.label).toBe("a");
    expect(state.revision).toBe(0);
    expect(state.pendingMoves.size).toBe(0);
  });

  it("mirrors the server pinned set exactly", () => {
    const snapshot = makeSnapshot(3, true, [{ doc_id: "d2", x: 0.9, y: 0.9 }]);
    const state = ViewState.fromSnapshot(snapshot);
    expect(state.docs.get("d2")!.pinned).toBe(true);
    expect(state.docs.get("d0")!.pinned).toBe(false);
    expect(state.serverPinnedIds()).toEqual(new Set(["d2"]));
  });
});

describe("stageDrag", () => {
  it("stages a drag at the mapped position and marks the doc pinned", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    state.stageDrag("d0", { x: 0.5, y: 0.5 });
    expect(state.pendingMoves.get("d0")).toEqual({ x: 0.5, y: 0.5 });
    expect(state.docs.get("d0")!.pinned).toBe(true);
    expect(state.docs.get("d0")!.position).toEqual({ x: 0.5, y: 0.5 });
  });

  it("keeps a single entry with the latest position on repeat drags", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    state.stageDrag("d0", { x: 0.2, y: 0.2 });
    state.stageDrag("d0", { x: 0.8, y: 0.9 });
    expect(state.pendingMoves.size).toBe(1);
    expect(state.pendingMoves.get("d0")).toEqual({ x: 0.8, y: 0.9 });
  });

  it("clamps drags outside the canvas to [0,1]^2", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    state.stageDrag("d0", { x: -0.4, y: 1.7 });
    expect(state.pendingMoves.get("d0")).toEqual({ x: 0, y: 1 });
  });

  it("rejects unknown docs", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    expect(() => state.stageDrag("ghost", { x: 0.5, y: 0.5 })).toThrow(/unknown doc/);
  });
});

describe("canSubmit", () => {
  it("blocks with no staged drags", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(4));
    expect(state.canSubmit()).toMatchObject({ ok: false });
  });

  it("blocks when fewer than 2 docs are pinned in total", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(4));
    state.stageDrag("d0", { x: 0.5, y: 0.5 });
    expect(state.totalPinned()).toBe(1);
    const check = state.canSubmit();
    expect(check).toMatchObject({ ok: false });
    if (!check.ok) expect(check.reason).toMatch(/2 documents/);
  });

  it("counts server pins toward the minimum", () => {
    const state = ViewState.fromSnapshot(
      makeSnapshot(4, true, [{ doc_id: "d3", x: 0.1, y: 0.1 }]),
    );
    state.stageDrag("d0", { x: 0.5, y: 0.5 });
    expect(state.totalPinned()).toBe(2);
    expect(state.canSubmit()).toEqual({ ok: true });
  });

  it("does not double count a staged doc that is already pinned", () => {
    const state = ViewState.fromSnapshot(
      makeSnapshot(4, true, [{ doc_id: "d0", x: 0.1, y: 0.1 }]),
    );
    state.stageDrag("d0", { x: 0.5, y: 0.5 });
    expect(state.totalPinned()).toBe(1);
    expect(state.canSubmit()).toMatchObject({ ok: false });
  });
});

describe("commitInteraction", () => {
  it("adopts layout and revision, clears staged drags, promotes them to pins", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    state.stageDrag("d0", { x: 0.4, y: 0.4 });
    state.stageDrag("d1", { x: 0.42, y: 0.4 });
    const result = makeResult(3, 1);
    const { from, to } = state.commitInteraction(result);
    expect(from).toHaveLength(3);
    expect(to[1]).toEqual({ x: result.layout[1][0], y: result.layout[1][1] });
    expect(state.revision).toBe(1);
    expect(state.pendingMoves.size).toBe(0);
    expect(state.serverPinnedIds()).toEqual(new Set(["d0", "d1"]));
    expect(state.docs.get("d0")!.pinned).toBe(true);
    expect(state.docs.get("d2")!.pinned).toBe(false);
    expect(state.docs.get("d2")!.position).toEqual({
      x: result.layout[2][0],
      y: result.layout[2][1],
    });
  });

  it("rejects a layout whose size disagrees with the corpus", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    expect(() => state.commitInteraction(makeResult(2, 1))).toThrow(/layout size/);
  });
});

describe("applySnapshot / applyRelease / applyReset", () => {
  it("applySnapshot replaces the pinned mirror wholesale", () => {
    const state = ViewState.fromSnapshot(
      makeSnapshot(3, true, [{ doc_id: "d0", x: 0.1, y: 0.1 }]),
    );
    const next = makeSnapshot(3, true, [{ doc_id: "d1", x: 0.2, y: 0.2 }]);
    next.revision = 5;
    state.applySnapshot(next);
    expect(state.revision).toBe(5);
    expect(state.serverPinnedIds()).toEqual(new Set(["d1"]));
    expect(state.docs.get("d0")!.pinned).toBe(false);
    expect(state.docs.get("d1")!.pinned).toBe(true);
  });

  it("applyRelease shrinks the mirror and keeps staged drags", () => {
    const state = ViewState.fromSnapshot(
      makeSnapshot(3, true, [
        { doc_id: "d0", x: 0.1, y: 0.1 },
        { doc_id: "d1", x: 0.2, y: 0.2 },
      ]),
    );
    state.stageDrag("d2", { x: 0.3, y: 0.3 });
    state.applyRelease({ revision: 2, pinned: [{ doc_id: "d1", x: 0.2, y: 0.2 }] });
    expect(state.revision).toBe(2);
    expect(state.serverPinnedIds()).toEqual(new Set(["d1"]));
    expect(state.docs.get("d0")!.pinned).toBe(false);
    expect(state.docs.get("d2")!.pinned).toBe(true);
    expect(state.pendingMoves.has("d2")).toBe(true);
  });

  it("applyReset clears pins and staged drags and adopts the fresh layout", () => {
    const state = ViewState.fromSnapshot(
      makeSnapshot(3, true, [{ doc_id: "d0", x: 0.1, y: 0.1 }]),
    );
    state.stageDrag("d1", { x: 0.6, y: 0.6 });
    const result = makeResult(3, 7);
    state.applyReset(result);
    expect(state.revision).toBe(7);
    expect(state.pendingMoves.size).toBe(0);
    expect(state.serverPinnedIds().size).toBe(0);
    for (const doc of state.docs.values()) expect(doc.pinned).toBe(false);
  });
});

describe("select", () => {
  it("moves the highlight between docs and supports deselect", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(3));
    state.select("d0");
    expect(state.docs.get("d0")!.selected).toBe(true);
    state.select("d1");
    expect(state.docs.get("d0")!.selected).toBe(false);
    expect(state.docs.get("d1")!.selected).toBe(true);
    state.select(null);
    expect(state.selectedId).toBeNull();
    expect(state.docs.get("d1")!.selected).toBe(false);
  });

  it("rejects unknown docs", () => {
    const state = ViewState.fromSnapshot(makeSnapshot(2));
    expect(() => state.select("nope")).toThrow(/unknown doc/);
  });
});
