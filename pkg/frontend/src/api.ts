import {
  ApiError,
  DocumentDetail,
  InteractionResult,
  MovePayload,
  ReleaseResult,
  SessionSnapshot,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin REST client for the steering service. Raises ApiError for {code, message} bodies. */
export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    // wrap to avoid unbound-fetch Illegal invocation in browsers
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  async createSession(featureMode: string, corpus?: string): Promise<string> {
    const body: Record<string, string> = { feature_mode: featureMode };
    if (corpus !== undefined) body.corpus = corpus;
    const made = await this.request<{ session_id: string }>("POST", "/sessions", body);
    return made.session_id;
  }

  getSession(sessionId: string): Promise<SessionSnapshot> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  postInteraction(sessionId: string, moves: MovePayload[]): Promise<InteractionResult> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/interactions`, {
      moves,
    });
  }

  release(sessionId: string, docIds: string[]): Promise<ReleaseResult> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/release`, {
      doc_ids: docIds,
    });
  }

  reset(sessionId: string): Promise<InteractionResult> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/reset`);
  }

  getDocument(docId: string): Promise<DocumentDetail> {
    return this.request("GET", `/corpus/${encodeURIComponent(docId)}`);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, "network_error", err instanceof Error ? err.message : String(err));
    }
    if (!response.ok) {
      let code = "http_error";
      let message = `request failed with status ${response.status}`;
      try {
        const payload = (await response.json()) as { code?: string; message?: string };
        if (payload.code) code = payload.code;
        if (payload.message) message = payload.message;
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }
}
