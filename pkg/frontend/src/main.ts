import { ApiClient } from "./api.js";
import { Controller } from "./controller.js";
import { looksLikeCrescent, membershipIndex } from "./crescent.js";
import { Viewport } from "./geometry.js";
import { Banner, DocumentPanel, WeightsPanel } from "./panel.js";
import { ScatterPlot } from "./plot.js";
import { ViewState } from "./state.js";

export interface BootstrapConfig {
  /** Service origin; empty string means same origin (the --static setup). */
  apiBase?: string;
  featureMode?: string;
  fetchFn?: typeof fetch;
}

export interface App {
  controller: Controller;
  plot: ScatterPlot;
  state: ViewState;
}

/**
 * Build the whole UI against the DOM in `root`. Expects the element ids laid
 * out in index.html: plot, weights, document, banner, submit, reset, release.
 */
export async function bootstrap(root: Document, config: BootstrapConfig = {}): Promise<App> {
  const svg = root.getElementById("plot") as unknown as SVGSVGElement;
  const banner = new Banner(root.getElementById("banner") as HTMLElement);
  const api = new ApiClient(config.apiBase ?? "", config.fetchFn);

  const featureMode = config.featureMode ?? "keyword_hashed";
  const sessionId = await api.createSession(featureMode);
  const snapshot = await api.getSession(sessionId);
  const state = ViewState.fromSnapshot(snapshot);

  const width = Number(svg.getAttribute("width") ?? 720);
  const height = Number(svg.getAttribute("height") ?? 720);
  const viewport = new Viewport(width, height);

  const weightsPanel = new WeightsPanel(root.getElementById("weights") as HTMLElement);
  const docPanel = new DocumentPanel(root.getElementById("document") as HTMLElement, api);

  let controller: Controller;
  const plot = new ScatterPlot(svg, viewport, {
    onDocClick: (docId) => void controller.inspect(docId),
    onCanvasClick: () => controller.deselect(),
    onDragEnd: (docId, screen) => controller.stageDragAt(docId, screen),
  });
  controller = new Controller(
    state,
    api,
    sessionId,
    plot,
    weightsPanel,
    docPanel,
    banner,
  );

  if (looksLikeCrescent(snapshot.doc_ids)) plot.setMemberships(membershipIndex());
  plot.render(state);
  weightsPanel.render(snapshot.top_weights);
  banner.clear();

  root.getElementById("submit")?.addEventListener("click", () => void controller.submit());
  root.getElementById("reset")?.addEventListener("click", () => void controller.resetSession());
  root.getElementById("release")?.addEventListener("click", () => void controller.releaseSelected());

  const sessionLabel = root.getElementById("session-label");
  if (sessionLabel) sessionLabel.textContent = `${snapshot.corpus} / ${featureMode}`;

  return { controller, plot, state };
}

/** Browser entry point; tests call bootstrap directly instead. */
export function start(): void {
  const params = new URLSearchParams(window.location.search);
  void bootstrap(document, {
    apiBase: params.get("api") ?? "",
    featureMode: params.get("mode") ?? "keyword_hashed",
  }).catch((err) => {
    const banner = document.getElementById("banner");
    if (banner) {
      banner.textContent = `failed to start: ${err instanceof Error ? err.message : err}`;
      banner.className = "banner error";
      banner.style.display = "block";
    }
  });
}

if (typeof window !== "undefined" && typeof document !== "undefined" && !("vitest" in globalThis)) {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", start);
  } else if (document.getElementById("plot")) {
    start();
  }
}
