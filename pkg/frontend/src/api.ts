/** HTTP client for the annotation service — the workspace's only
 * network surface. Annotator identity travels in the X-Annotator-Id
 * header; non-2xx responses surface as ApiError carrying the parsed
 * {error_code, message, details} body.
 */

import {
  AnnotationJson,
  ErrorBody,
  DocumentJson,
  NextAssignment,
  SchemaDef,
  SubmitResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ErrorBody,
  ) {
    super(body.message);
    this.name = "ApiError";
  }

  get errorCode(): string {
    return this.body.error_code;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;

  constructor(
    baseUrl: string,
    public readonly annotatorId: string,
    private readonly fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {
    this.base = baseUrl.replace(/\/+$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = {
      method,
      headers: {
        "X-Annotator-Id": this.annotatorId,
        ...(body !== undefined ? { "Content-Type": "application/json" } : {}),
      },
      ...(body !== undefined ? { body: JSON.stringify(body) } : {}),
    };
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const errorBody: ErrorBody =
        payload && typeof payload === "object" && "error_code" in payload
          ? (payload as ErrorBody)
          : { error_code: "unknown", message: `HTTP ${response.status}`, details: payload };
      throw new ApiError(response.status, errorBody);
    }
    return payload as T;
  }

  getSchema(): Promise<SchemaDef> {
    return this.request("GET", "/api/schema");
  }

  async getGuidelines(): Promise<string> {
    const body = await this.request<{ markdown: string }>("GET", "/api/guidelines");
    return body.markdown;
  }

  getDocument(documentId: string): Promise<DocumentJson> {
    return this.request("GET", `/api/documents/${encodeURIComponent(documentId)}`);
  }

  nextAssignment(projectId: string): Promise<NextAssignment> {
    return this.request("GET", `/api/projects/${encodeURIComponent(projectId)}/next`);
  }

  submitAnnotation(projectId: string, annotation: AnnotationJson): Promise<SubmitResult> {
    return this.request(
      "POST",
      `/api/projects/${encodeURIComponent(projectId)}/annotations`,
      annotation,
    );
  }
}
