/** Workspace session: the current assignment, its draft, and the
 * submission flow. Optimistic UI — client checks give instant feedback,
 * but the server's verdict on submit is authoritative, and its
 * rejection report is mapped back onto the offending spans.
 */

import { ApiClient, ApiError } from "./api.js";
import { Draft } from "./draft.js";
import { RULE_REQUIRED_MISSING, RuleViolationError } from "./rules.js";
import {
  ErrorBody,
  ValidationReportJson,
  ViolationJson,
} from "./types.js";

export type SubmitOutcome =
  | { accepted: true; storedId: string }
  | { accepted: false; violations: ViolationJson[]; message: string };

export class Workspace {
  draft: Draft | null = null;
  remaining = 0;
  /** Span id -> rule messages the server (or client) attached to it. */
  readonly flaggedSpans = new Map<string, string[]>();
  /** Violations that name no particular span (e.g. a missing required task). */
  formErrors: string[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly projectId: string,
  ) {}

  /** Fetch the next pending assignment and open a fresh draft for it.
   * Resolves to false when the queue is exhausted. */
  async loadNext(): Promise<boolean> {
    this.clearFeedback();
    const next = await this.api.nextAssignment(this.projectId);
    this.remaining = next.remaining;
    if (!next.document || !next.schema) {
      this.draft = null;
      return false;
    }
    this.draft = new Draft(next.document, next.schema, this.api.annotatorId);
    return true;
  }

  clearFeedback(): void {
    this.flaggedSpans.clear();
    this.formErrors = [];
  }

  /** Map a rejection report onto the workspace: violations naming spans
   * flag those spans (the view outlines them and shows the rule message);
   * the rest become document-level errors. */
  applyServerRejection(body: ErrorBody): ViolationJson[] {
    this.clearFeedback();
    if (body.error_code === "validation-failed" && isReport(body.details)) {
      for (const violation of body.details.violations) {
        if (violation.severity !== "error") continue;
        if (violation.offending_ids.length === 0) {
          this.formErrors.push(`${violation.rule_id}: ${violation.message}`);
          continue;
        }
        for (const spanId of violation.offending_ids) {
          const messages = this.flaggedSpans.get(spanId) ?? [];
          messages.push(`${violation.rule_id}: ${violation.message}`);
          this.flaggedSpans.set(spanId, messages);
        }
      }
      return body.details.violations;
    }
    this.formErrors.push(`${body.error_code}: ${body.message}`);
    return [];
  }

  /** Submit the draft. Refuses locally while the required classifications
   * are unset (the button is disabled for the same reason); maps a server
   * rejection back onto the draft; loads the next assignment on success. */
  async submit(): Promise<SubmitOutcome> {
    const draft = this.draft;
    if (!draft) throw new Error("no draft to submit");
    if (!draft.canSubmit()) {
      throw new RuleViolationError(
        RULE_REQUIRED_MISSING,
        "choose Relevance and Type before submitting",
      );
    }
    try {
      const result = await this.api.submitAnnotation(this.projectId, draft.serialize());
      await this.loadNext();
      return { accepted: true, storedId: result.stored_id };
    } catch (error) {
      if (error instanceof ApiError) {
        const violations = this.applyServerRejection(error.body);
        return { accepted: false, violations, message: error.body.message };
      }
      throw error;
    }
  }
}

function isReport(details: unknown): details is ValidationReportJson {
  return (
    typeof details === "object" &&
    details !== null &&
    Array.isArray((details as ValidationReportJson).violations)
  );
}
