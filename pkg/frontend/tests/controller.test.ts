import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Controller } from "../src/controller.js";
import { Viewport } from "../src/geometry.js";
import { Banner, DocumentPanel, WeightsPanel } from "../src/panel.js";
import { ScatterPlot } from "../src/plot.js";
import { ViewState } from "../src/state.js";
import {
  MockFetch,
  instantScheduler,
  makeDom,
  makeResult,
  makeSnapshot,
  mockFetch,
} from "./helpers.js";

interface Rig {
  controller: Controller;
  state: ViewState;
  plot: ScatterPlot;
  mock: MockFetch;
  bannerEl: HTMLElement;
  weightsEl: HTMLElement;
}

function makeRig(
  respond?: Parameters<typeof mockFetch>[0],
  n = 6,
): Rig {
  makeDom();
  const mock = mockFetch(
    respond ??
      ((call) => {
        if (call.url.includes("/interactions")) return { status: 200, body: makeResult(n, 1) };
        if (call.url.includes("/corpus/")) {
          const id = call.url.split("/").pop()!;
          return { status: 200, body: { id, text: `text of ${id}` } };
        }
        throw new Error(`unexpected call: ${call.url}`);
      }),
  );
  const api = new ApiClient("", mock.fetchFn);
  const state = ViewState.fromSnapshot(makeSnapshot(n));
  const svg = document.getElementById("plot") as unknown as SVGSVGElement;
  const plot = new ScatterPlot(svg, new Viewport(600, 600, 20));
  const weightsEl = document.getElementById("weights") as HTMLElement;
  const bannerEl = document.getElementById("banner") as HTMLElement;
  const controller = new Controller(
    state,
    api,
    "s1",
    plot,
    new WeightsPanel(weightsEl),
    new DocumentPanel(document.getElementById("document") as HTMLElement, api),
    new Banner(bannerEl),
    instantScheduler(),
    400,
  );
  plot.render(state);
  return { controller, state, plot, mock, bannerEl, weightsEl };
}

describe("submit", () => {
  it("dragging 2 docs together and submitting posts exactly once, bumps the revision, and moves every point to the returned layout", async () => {
    const { controller, state, plot, mock, weightsEl } = makeRig();
    const target = plot.viewport.toScreen({ x: 0.52, y: 0.5 });
    controller.stageDragAt("d0", { x: target.x - 4, y: target.y });
    controller.stageDragAt("d3", { x: target.x + 4, y: target.y });
    expect(mock.calls).toHaveLength(0); // staging never talks to the server

    const before = state.revision;
    const outcome = await controller.submit();

    expect(outcome).toMatchObject({ kind: "applied", revision: before + 1 });
    expect(mock.matching("/interactions")).toHaveLength(1);
    expect(mock.calls).toHaveLength(1);
    expect(state.revision).toBe(before + 1);
    expect(state.pendingMoves.size).toBe(0);

    const returned = makeResult(6, 1).layout;
    state.order.forEach((id, i) => {
      expect(state.docs.get(id)!.position).toEqual({ x: returned[i][0], y: returned[i][1] });
      const screen = plot.viewport.toScreen(state.docs.get(id)!.position);
      const drawn = plot.screenPosition(id);
      expect(Math.hypot(drawn.x - screen.x, drawn.y - screen.y)).toBeLessThan(0.5);
    });
    expect(weightsEl.textContent).toContain("engine");
  });

  it("posts the staged moves payload with clamped coordinates", async () => {
    const { controller, mock } = makeRig();
    controller.stageDragAt("d0", { x: -50, y: -50 });
    controller.stageDragAt("d1", { x: 10_000, y: 10_000 });
    await controller.submit();
    const body = mock.matching("/interactions")[0].body as {
      moves: { doc_id: string; x: number; y: number }[];
    };
    expect(body.moves).toHaveLength(2);
    for (const move of body.moves) {
      expect(move.x).toBeGreaterThanOrEqual(0);
      expect(move.x).toBeLessThanOrEqual(1);
      expect(move.y).toBeGreaterThanOrEqual(0);
      expect(move.y).toBeLessThanOrEqual(1);
    }
  });

  it("blocks client side with fewer than 2 pinned docs: message shown, zero requests", async () => {
    const { controller, mock, bannerEl } = makeRig();
    controller.stageDragAt("d0", { x: 300, y: 300 });
    const outcome = await controller.submit();
    expect(outcome.kind).toBe("blocked");
    expect(mock.calls).toHaveLength(0);
    expect(bannerEl.textContent).toMatch(/2 documents/);
    expect(bannerEl.className).toContain("info");
  });

  it("blocks with nothing staged even when the server already has pins", async () => {
    makeDom();
    const mock = mockFetch(() => ({ status: 200, body: makeResult(3, 1) }));
    const state = ViewState.fromSnapshot(
      makeSnapshot(3, true, [
        { doc_id: "d0", x: 0.1, y: 0.1 },
        { doc_id: "d1", x: 0.2, y: 0.2 },
      ]),
    );
    const svg = document.getElementById("plot") as unknown as SVGSVGElement;
    const plot = new ScatterPlot(svg, new Viewport(600, 600, 20));
    const api = new ApiClient("", mock.fetchFn);
    const controller = new Controller(
      state,
      api,
      "s1",
      plot,
      new WeightsPanel(document.getElementById("weights") as HTMLElement),
      new DocumentPanel(document.getElementById("document") as HTMLElement, api),
      new Banner(document.getElementById("banner") as HTMLElement),
      instantScheduler(),
    );
    const outcome = await controller.submit();
    expect(outcome.kind).toBe("blocked");
    expect(mock.calls).toHaveLength(0);
  });

  it("keeps staged drags and shows an error banner when the server fails", async () => {
    const { controller, state, mock, bannerEl } = makeRig(() => ({
      status: 500,
      body: { code: "optimizer_error", message: "projection failed" },
    }));
    controller.stageDragAt("d0", { x: 290, y: 300 });
    controller.stageDragAt("d1", { x: 310, y: 300 });
    const staged = new Map(state.pendingMoves);
    const before = state.revision;

    const outcome = await controller.submit();

    expect(outcome.kind).toBe("error");
    expect(state.pendingMoves).toEqual(staged); // retained for retry
    expect(state.revision).toBe(before);
    expect(bannerEl.textContent).toContain("optimizer_error");
    expect(bannerEl.className).toContain("error");
  });

  it("allows at most one in-flight interaction", async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => {
      release = resolve;
    });
    const { controller } = makeRig(async () => {
      await gate;
      return { status: 200, body: makeResult(6, 1) };
    });
    controller.stageDragAt("d0", { x: 290, y: 300 });
    controller.stageDragAt("d1", { x: 310, y: 300 });
    const first = controller.submit();
    const second = await controller.submit();
    expect(second.kind).toBe("busy");
    release();
    const outcome = await first;
    expect(outcome.kind).toBe("applied");
  });

  it("a second submit after success is blocked: nothing is staged anymore", async () => {
    const { controller, mock } = makeRig();
    controller.stageDragAt("d0", { x: 290, y: 300 });
    controller.stageDragAt("d1", { x: 310, y: 300 });
    await controller.submit();
    const outcome = await controller.submit();
    expect(outcome.kind).toBe("blocked");
    expect(mock.matching("/interactions")).toHaveLength(1);
  });
});

describe("inspect and deselect", () => {
  it("inspect selects the doc, renders it, and fetches its text", async () => {
    const { controller, state } = makeRig();
    await controller.inspect("d2");
    expect(state.selectedId).toBe("d2");
    expect(document.getElementById("document")!.textContent).toContain("text of d2");
  });

  it("deselect clears the panel and the highlight", async () => {
    const { controller, state } = makeRig();
    await controller.inspect("d2");
    controller.deselect();
    expect(state.selectedId).toBeNull();
    expect(document.getElementById("document")!.textContent).toBe("");
  });
});

describe("releaseSelected and resetSession", () => {
  it("release unpins on the server and refreshes the mirror", async () => {
    makeDom();
    const mock = mockFetch((call) => {
      if (call.url.includes("/release")) {
        return { status: 200, body: { revision: 2, pinned: [{ doc_id: "d1", x: 0.2, y: 0.2 }] } };
      }
      const id = call.url.split("/").pop()!;
      return { status: 200, body: { id, text: "t" } };
    });
    const state = ViewState.fromSnapshot(
      makeSnapshot(3, true, [
        { doc_id: "d0", x: 0.1, y: 0.1 },
        { doc_id: "d1", x: 0.2, y: 0.2 },
      ]),
    );
    const svg = document.getElementById("plot") as unknown as SVGSVGElement;
    const plot = new ScatterPlot(svg, new Viewport(600, 600, 20));
    const api = new ApiClient("", mock.fetchFn);
    const controller = new Controller(
      state,
      api,
      "s1",
      plot,
      new WeightsPanel(document.getElementById("weights") as HTMLElement),
      new DocumentPanel(document.getElementById("document") as HTMLElement, api),
      new Banner(document.getElementById("banner") as HTMLElement),
      instantScheduler(),
    );
    plot.render(state);
    await controller.inspect("d0");
    await controller.releaseSelected();
    expect(mock.matching("/release")).toHaveLength(1);
    expect(state.serverPinnedIds()).toEqual(new Set(["d1"]));
    expect(state.revision).toBe(2);
  });

  it("reset clears pins and staged drags and animates to the fresh layout", async () => {
    const { controller, state, mock } = makeRig((call) => {
      if (call.url.includes("/reset")) return { status: 200, body: makeResult(6, 3) };
      return { status: 200, body: makeResult(6, 1) };
    });
    controller.stageDragAt("d0", { x: 290, y: 300 });
    controller.stageDragAt("d1", { x: 310, y: 300 });
    await controller.submit();
    await controller.resetSession();
    expect(mock.matching("/reset")).toHaveLength(1);
    expect(state.revision).toBe(3);
    expect(state.serverPinnedIds().size).toBe(0);
    expect(state.pendingMoves.size).toBe(0);
  });
});
