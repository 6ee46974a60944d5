import {
  DEFAULT_ANIMATION_MS,
  FrameScheduler,
  defaultScheduler,
  tween,
} from "./animate.js";
import { ApiClient } from "./api.js";
import { Banner, DocumentPanel, WeightsPanel } from "./panel.js";
import { ScatterPlot } from "./plot.js";
import { ViewState } from "./state.js";
import { ApiError, Vec2 } from "./types.js";

export type SubmitOutcome =
  | { kind: "applied"; revision: number }
  | { kind: "blocked"; reason: string }
  | { kind: "busy" }
  | { kind: "error"; error: ApiError };

/**
 * Wires state, plot, panels, and the API.
 *
 * At most one interaction-class request (submit, release, reset) is in flight
 * per session; document fetches bypass the gate and use last-wins ordering in
 * the panel instead. Snapshot application is synchronous, so rendering never
 * observes a half-applied update.
 */
export class Controller {
  private interactionInFlight = false;

  constructor(
    readonly state: ViewState,
    private readonly api: ApiClient,
    readonly sessionId: string,
    private readonly plot: ScatterPlot,
    private readonly weightsPanel: WeightsPanel,
    private readonly docPanel: DocumentPanel,
    private readonly banner: Banner,
    private readonly scheduler: FrameScheduler = defaultScheduler,
    private readonly animationMs: number = DEFAULT_ANIMATION_MS,
  ) {}

  /** Drag released over the plot: stage locally and repaint. No server call. */
  stageDragAt(docId: string, screen: Vec2): void {
    this.state.stageDrag(docId, this.plot.viewport.toModel(screen));
    this.plot.render(this.state);
  }

  /**
   * Submit staged drags as one interaction. Preconditions are checked client
   * side; when they fail no request leaves the browser. On success the whole
   * layout animates to the server's re-projection; on failure staged drags
   * are kept so the user can retry or adjust.
   */
  async submit(): Promise<SubmitOutcome> {
    if (this.interactionInFlight) return { kind: "busy" };
    const check = this.state.canSubmit();
    if (!check.ok) {
      this.banner.show("info", check.reason);
      return { kind: "blocked", reason: check.reason };
    }
    this.interactionInFlight = true;
    try {
      const result = await this.api.postInteraction(this.sessionId, this.state.movesPayload());
      this.banner.clear();
      const { from, to } = this.state.commitInteraction(result);
      await tween(
        from,
        to,
        (frame) => this.plot.render(this.state, frame),
        this.animationMs,
        this.scheduler,
      );
      this.plot.render(this.state);
      this.weightsPanel.render(result.top_weights);
      return { kind: "applied", revision: result.revision };
    } catch (err) {
      const error = err instanceof ApiError ? err : new ApiError(0, "client_error", String(err));
      this.banner.show("error", `${error.code}: ${error.message}`);
      return { kind: "error", error };
    } finally {
      this.interactionInFlight = false;
    }
  }

  /** Select a doc and show its text; rapid selections resolve last-wins. */
  async inspect(docId: string): Promise<void> {
    this.state.select(docId);
    this.plot.render(this.state);
    await this.docPanel.show(docId);
  }

  /** Empty-canvas click: clear selection and the detail panel. */
  deselect(): void {
    this.state.select(null);
    this.docPanel.clear();
    this.plot.render(this.state);
  }

  /** Unpin the selected doc on the server; layout and weights stay put. */
  async releaseSelected(): Promise<void> {
    const docId = this.state.selectedId;
    if (docId === null || this.interactionInFlight) return;
    if (!this.state.serverPinnedIds().has(docId)) {
      this.banner.show("info", `${docId} is not pinned on the server`);
      return;
    }
    this.interactionInFlight = true;
    try {
      const result = await this.api.release(this.sessionId, [docId]);
      this.state.applyRelease(result);
      this.plot.render(this.state);
      this.banner.clear();
    } catch (err) {
      const error = err instanceof ApiError ? err : new ApiError(0, "client_error", String(err));
      this.banner.show("error", `${error.code}: ${error.message}`);
    } finally {
      this.interactionInFlight = false;
    }
  }

  /** Server-side reset: uniform weights, fresh layout, nothing pinned. */
  async resetSession(): Promise<void> {
    if (this.interactionInFlight) return;
    this.interactionInFlight = true;
    try {
      const result = await this.api.reset(this.sessionId);
      const { from, to } = this.state.applyReset(result);
      await tween(
        from,
        to,
        (frame) => this.plot.render(this.state, frame),
        this.animationMs,
        this.scheduler,
      );
      this.plot.render(this.state);
      this.weightsPanel.render(result.top_weights);
      this.banner.clear();
    } catch (err) {
      const error = err instanceof ApiError ? err : new ApiError(0, "client_error", String(err));
      this.banner.show("error", `${error.code}: ${error.message}`);
    } finally {
      this.interactionInFlight = false;
    }
  }
}
