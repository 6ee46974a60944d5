import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ApiError } from "../src/types.js";
import { mockFetch } from "./helpers.js";

describe("ApiClient", () => {
  it("creates a session and returns its id", async () => {
    const mock = mockFetch(() => ({ status: 201, body: { session_id: "abc" } }));
    const api = new ApiClient("http://svc", mock.fetchFn);
    const id = await api.createSession("keyword_hashed");
    expect(id).toBe("abc");
    expect(mock.calls).toHaveLength(1);
    expect(mock.calls[0]).toMatchObject({
      url: "http://svc/sessions",
      method: "POST",
      body: { feature_mode: "keyword_hashed" },
    });
  });

  it("posts interactions with the move payload", async () => {
    const mock = mockFetch(() => ({
      status: 200,
      body: { revision: 1, layout: [[0, 0]], top_weights: { entries: [], approximate: false } },
    }));
    const api = new ApiClient("http://svc", mock.fetchFn);
    const moves = [{ doc_id: "d1", x: 0.25, y: 0.75 }];
    const result = await api.postInteraction("s1", moves);
    expect(result.revision).toBe(1);
    expect(mock.calls[0].url).toBe("http://svc/sessions/s1/interactions");
    expect(mock.calls[0].body).toEqual({ moves });
  });

  it("turns {code, message} errors into ApiError", async () => {
    const mock = mockFetch(() => ({
      status: 400,
      body: { code: "too_few_pinned", message: "need 2" },
    }));
    const api = new ApiClient("http://svc", mock.fetchFn);
    const err = await api.postInteraction("s1", []).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err).toMatchObject({ status: 400, code: "too_few_pinned", message: "need 2" });
  });

  it("keeps a generic code when the error body is not JSON", async () => {
    const api = new ApiClient("http://svc", async () => new Response("boom", { status: 502 }));
    const err = await api.getSession("s1").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err).toMatchObject({ status: 502, code: "http_error" });
  });

  it("maps transport failures to a status-0 ApiError", async () => {
    const api = new ApiClient("http://svc", async () => {
      throw new TypeError("connection refused");
    });
    const err = await api.getDocument("d1").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err).toMatchObject({ status: 0, code: "network_error" });
  });

  it("percent-encodes document ids in paths", async () => {
    const mock = mockFetch(() => ({ status: 200, body: { id: "a b", text: "t" } }));
    const api = new ApiClient("", mock.fetchFn);
    await api.getDocument("a b");
    expect(mock.calls[0].url).toBe("/corpus/a%20b");
  });

  it("releases and resets through their endpoints", async () => {
    const mock = mockFetch((call) =>
      call.url.endsWith("/release")
        ? { status: 200, body: { revision: 2, pinned: [] } }
        : {
            status: 200,
            body: { revision: 3, layout: [], top_weights: { entries: [], approximate: false } },
          },
    );
    const api = new ApiClient("", mock.fetchFn);
    const released = await api.release("s1", ["d1"]);
    expect(released.revision).toBe(2);
    expect(mock.calls[0].body).toEqual({ doc_ids: ["d1"] });
    const reset = await api.reset("s1");
    expect(reset.revision).toBe(3);
    expect(mock.calls[1].url).toBe("/sessions/s1/reset");
  });
});
