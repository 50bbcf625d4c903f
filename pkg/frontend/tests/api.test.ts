import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, FetchLike } from "../src/api.js";
import { nineTaskDraft } from "./helpers.js";

interface Captured {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: string | null;
}

function fakeFetch(
  respond: (url: string, init?: RequestInit) => { status: number; body: unknown },
  log: Captured[],
): FetchLike {
  return async (url, init) => {
    log.push({
      url,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: typeof init?.body === "string" ? init.body : null,
    });
    const { status, body } = respond(url, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

describe("ApiClient", () => {
  it("sends the annotator identity header on every request", async () => {
    const log: Captured[] = [];
    const client = new ApiClient(
      "http://service.test/",
      "ana",
      fakeFetch(() => ({ status: 200, body: { markdown: "# Guide" } }), log),
    );
    await client.getGuidelines();
    expect(log[0]!.url).toBe("http://service.test/api/guidelines");
    expect(log[0]!.headers["X-Annotator-Id"]).toBe("ana");
    expect(log[0]!.method).toBe("GET");
  });

  it("posts the serialized draft to the project's annotations route", async () => {
    const log: Captured[] = [];
    const client = new ApiClient(
      "http://service.test",
      "ana",
      fakeFetch(() => ({ status: 201, body: { stored_id: "ann-000000", document_id: "doc-0042" } }), log),
    );
    const annotation = nineTaskDraft().serialize();
    const result = await client.submitAnnotation("flood-watch", annotation);
    expect(result.stored_id).toBe("ann-000000");
    expect(log[0]!.url).toBe("http://service.test/api/projects/flood-watch/annotations");
    expect(log[0]!.method).toBe("POST");
    expect(log[0]!.headers["Content-Type"]).toBe("application/json");
    expect(JSON.parse(log[0]!.body!)).toEqual(annotation);
  });

  it("surfaces error bodies as ApiError with the server's error code", async () => {
    const client = new ApiClient(
      "http://service.test",
      "ghost",
      fakeFetch(() => ({
        status: 403,
        body: { error_code: "unknown-annotator", message: "unknown annotator ghost", details: null },
      }), []),
    );
    let thrown: ApiError | undefined;
    try {
      await client.nextAssignment("flood-watch");
    } catch (error) {
      thrown = error as ApiError;
    }
    expect(thrown).toBeInstanceOf(ApiError);
    expect(thrown!.status).toBe(403);
    expect(thrown!.errorCode).toBe("unknown-annotator");
    expect(thrown!.message).toBe("unknown annotator ghost");
  });

  it("wraps non-JSON failures in a generic error body", async () => {
    const client = new ApiClient("http://service.test", "ana", async () =>
      new Response("gateway exploded", { status: 502 }),
    );
    let thrown: ApiError | undefined;
    try {
      await client.getSchema();
    } catch (error) {
      thrown = error as ApiError;
    }
    expect(thrown!.status).toBe(502);
    expect(thrown!.errorCode).toBe("unknown");
  });

  it("escapes path segments", async () => {
    const log: Captured[] = [];
    const client = new ApiClient(
      "http://service.test",
      "ana",
      fakeFetch(() => ({ status: 200, body: {} }), log),
    );
    await client.getDocument("doc/with?weird");
    expect(log[0]!.url).toBe("http://service.test/api/documents/doc%2Fwith%3Fweird");
  });
});
