import {
  DocView,
  InteractionResult,
  MovePayload,
  PinnedDoc,
  ReleaseResult,
  SessionSnapshot,
  Vec2,
} from "./types.js";

/** Submitting requires at least this many pinned documents in total. */
export const MIN_PINNED_TO_SUBMIT = 2;

export type SubmitCheck = { ok: true } | { ok: false; reason: string };

const clamp01 = (v: number): number => Math.min(1, Math.max(0, v));

/**
 * Client-side session state: document views, the last applied revision, and
 * drags staged for the next submit.
 *
 * Pinned flags mirror the server's pinned set from the last applied snapshot,
 * unioned with locally staged drags; every applied snapshot replaces the
 * server half of that mirror wholesale.
 */
export class ViewState {
  readonly docs = new Map<string, DocView>();
  /** Document ids in server order; layouts from the API align to this. */
  readonly order: string[] = [];
  revision = -1;
  /** Staged drags awaiting submit; a repeat drag of the same doc overwrites. */
  readonly pendingMoves = new Map<string, Vec2>();
  selectedId: string | null = null;
  private serverPinned = new Set<string>();

  static fromSnapshot(snapshot: SessionSnapshot): ViewState {
    const state = new ViewState();
    snapshot.doc_ids.forEach((id, i) => {
      state.docs.set(id, {
        id,
        position: { x: snapshot.layout[i][0], y: snapshot.layout[i][1] },
        label: snapshot.labels[i] ?? null,
        pinned: false,
        selected: false,
      });
      state.order.push(id);
    });
    state.applySnapshot(snapshot);
    return state;
  }

  /** Replace positions, revision, and the pinned mirror from a full snapshot. */
  applySnapshot(snapshot: SessionSnapshot): void {
    snapshot.doc_ids.forEach((id, i) => {
      const doc = this.docs.get(id);
      if (!doc) throw new Error(`unknown doc in snapshot: ${id}`);
      doc.position = { x: snapshot.layout[i][0], y: snapshot.layout[i][1] };
    });
    this.revision = snapshot.revision;
    this.setServerPinned(snapshot.pinned);
  }

  /**
   * Stage a drag: clamp to [0,1]^2, mark the doc pinned, and record (or
   * overwrite) its pending move. No server call happens here.
   */
  stageDrag(docId: string, model: Vec2): void {
    const doc = this.docs.get(docId);
    if (!doc) throw new Error(`unknown doc: ${docId}`);
    const position = { x: clamp01(model.x), y: clamp01(model.y) };
    doc.position = position;
    doc.pinned = true;
    this.pendingMoves.set(docId, position);
  }

  /** Server-pinned docs unioned with staged drags. */
  totalPinned(): number {
    const ids = new Set(this.serverPinned);
    for (const id of this.pendingMoves.keys()) ids.add(id);
    return ids.size;
  }

  /** Mirror of the submit preconditions; a failed check must block the request. */
  canSubmit(): SubmitCheck {
    if (this.pendingMoves.size === 0) {
      return { ok: false, reason: "drag at least one document before submitting" };
    }
    if (this.totalPinned() < MIN_PINNED_TO_SUBMIT) {
      return {
        ok: false,
        reason: `at least ${MIN_PINNED_TO_SUBMIT} documents must be pinned to learn from an interaction`,
      };
    }
    return { ok: true };
  }

  movesPayload(): MovePayload[] {
    return [...this.pendingMoves.entries()].map(([doc_id, p]) => ({ doc_id, x: p.x, y: p.y }));
  }

  /**
   * Commit an accepted interaction: adopt the returned layout and revision,
   * promote staged drags into the pinned mirror (the server merged them the
   * same way), and clear pendingMoves. Returns the old and new positions in
   * server order for the layout animation.
   */
  commitInteraction(result: InteractionResult): { from: Vec2[]; to: Vec2[] } {
    const from = this.positionsInOrder();
    this.adoptLayout(result.layout);
    for (const id of this.pendingMoves.keys()) this.serverPinned.add(id);
    this.pendingMoves.clear();
    this.refreshPinnedFlags();
    this.revision = result.revision;
    return { from, to: this.positionsInOrder() };
  }

  /** Apply a release response: the pinned mirror shrinks, staged drags stay. */
  applyRelease(result: ReleaseResult): void {
    this.revision = result.revision;
    this.setServerPinned(result.pinned);
  }

  /** Apply a reset response: fresh layout, nothing pinned, nothing staged. */
  applyReset(result: InteractionResult): { from: Vec2[]; to: Vec2[] } {
    const from = this.positionsInOrder();
    this.adoptLayout(result.layout);
    this.pendingMoves.clear();
    this.serverPinned.clear();
    this.refreshPinnedFlags();
    this.revision = result.revision;
    return { from, to: this.positionsInOrder() };
  }

  select(docId: string | null): void {
    if (docId !== null && !this.docs.has(docId)) throw new Error(`unknown doc: ${docId}`);
    if (this.selectedId !== null) {
      const previous = this.docs.get(this.selectedId);
      if (previous) previous.selected = false;
    }
    this.selectedId = docId;
    if (docId !== null) this.docs.get(docId)!.selected = true;
  }

  positionsInOrder(): Vec2[] {
    return this.order.map((id) => ({ ...this.docs.get(id)!.position }));
  }

  serverPinnedIds(): Set<string> {
    return new Set(this.serverPinned);
  }

  private adoptLayout(layout: [number, number][]): void {
    if (layout.length !== this.order.length) {
      throw new Error(`layout size ${layout.length} does not match ${this.order.length} docs`);
    }
    this.order.forEach((id, i) => {
      this.docs.get(id)!.position = { x: layout[i][0], y: layout[i][1] };
    });
  }

  private setServerPinned(pinned: PinnedDoc[]): void {
    this.serverPinned = new Set(pinned.map((p) => p.doc_id));
    this.refreshPinnedFlags();
  }

  private refreshPinnedFlags(): void {
    for (const doc of this.docs.values()) {
      doc.pinned = this.serverPinned.has(doc.id) || this.pendingMoves.has(doc.id);
    }
  }
}
