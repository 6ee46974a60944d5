/** Wire and view types shared across the UI modules. */

export interface Vec2 {
  x: number;
  y: number;
}

/** One document as drawn in the plot. Positions are model coordinates in [0,1]^2. */
export interface DocView {
  id: string;
  position: Vec2;
  label: string | null;
  pinned: boolean;
  selected: boolean;
}

export interface TopWeightEntry {
  dim: number;
  weight: number;
  /** Keyword mode only: most frequent corpus tokens hashing into this bucket. */
  tokens?: string[];
}

export interface TopWeights {
  entries: TopWeightEntry[];
  /** True when the token mapping is a hash-bucket heuristic. */
  approximate: boolean;
}

export interface PinnedDoc {
  doc_id: string;
  x: number;
  y: number;
}

/** GET /sessions/{id}; layout is [[x, y], ...] aligned to doc_ids. */
export interface SessionSnapshot {
  session_id: string;
  corpus: string;
  feature_mode: string;
  revision: number;
  doc_ids: string[];
  labels: (string | null)[];
  layout: [number, number][];
  pinned: PinnedDoc[];
  top_weights: TopWeights;
  dims: number;
}

/** POST /sessions/{id}/interactions and /reset responses. */
export interface InteractionResult {
  revision: number;
  layout: [number, number][];
  top_weights: TopWeights;
}

/** POST /sessions/{id}/release response. */
export interface ReleaseResult {
  revision: number;
  pinned: PinnedDoc[];
}

/** GET /corpus/{doc_id} response. */
export interface DocumentDetail {
  id: string;
  text: string;
  label?: string;
}

export interface MovePayload {
  doc_id: string;
  x: number;
  y: number;
}

/** Server error envelope {code, message} paired with the HTTP status. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}
