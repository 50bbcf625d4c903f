/** The draft annotation being edited: state plus the operations the
 * palette exposes. Every mutation keeps the draft serializable to the
 * annotation interchange format; blocked operations throw
 * RuleViolationError with the same rule id the server would use.
 */

import {
  AnnotationJson,
  DocumentJson,
  RelationJson,
  SchemaDef,
  SpanJson,
  ViolationJson,
  factTaskName,
  taskByName,
} from "./types.js";
import { codePointLength } from "./text.js";
import {
  RULE_BAD_COUNT,
  RULE_FIELD_NOT_ALLOWED,
  RULE_RELATION_SOURCE_NOT_FACT,
  RULE_RELATION_TARGET_IS_FACT,
  RULE_RELATION_UNKNOWN_SPAN,
  RULE_SPAN_OUT_OF_RANGE,
  RULE_UNKNOWN_LABEL,
  RULE_UNKNOWN_TASK,
  RuleViolationError,
  checkDraft,
} from "./rules.js";

export interface DraftSpan {
  id: string;
  task: string;
  label: string;
  start: number;
  end: number;
  factTypes: string[];
  countValue: number | null;
  countQualifier: string | null;
  dateValue: string | null;
}

/** Digits-only date mask: strips separators, caps at 8 digits, so
 * "2019-03-05" normalizes to "20190305" as the user types. */
export function maskDate(raw: string): string {
  return raw.replace(/\D+/g, "").slice(0, 8);
}

export class Draft {
  readonly document: DocumentJson;
  readonly schema: SchemaDef;
  readonly annotatorId: string;
  round: string;

  relevance: string | null = null;
  docType: string | null = null;
  private spans: DraftSpan[] = [];
  private relations: RelationJson[] = [];
  private nextId = 1;

  constructor(document: DocumentJson, schema: SchemaDef, annotatorId: string, round = "initial") {
    this.document = document;
    this.schema = schema;
    this.annotatorId = annotatorId;
    this.round = round;
  }

  get factTask(): string {
    return factTaskName(this.schema);
  }

  // -- classification -------------------------------------------------------

  setRelevance(label: string | null): void {
    this.assertClassificationLabel("Relevance", label);
    this.relevance = label;
  }

  setDocType(label: string | null): void {
    this.assertClassificationLabel("Type", label);
    this.docType = label;
  }

  private assertClassificationLabel(taskName: string, label: string | null): void {
    if (label === null) return;
    const task = taskByName(this.schema, taskName);
    if (!task || task.kind !== "classification") {
      throw new RuleViolationError(RULE_UNKNOWN_TASK, `no classification task ${taskName}`);
    }
    if (!task.labels.includes(label)) {
      throw new RuleViolationError(RULE_UNKNOWN_LABEL, `'${label}' is not a ${taskName} label`);
    }
  }

  /** Submit stays disabled until both required classifications are chosen. */
  canSubmit(): boolean {
    return this.relevance !== null && this.docType !== null;
  }

  // -- spans ----------------------------------------------------------------

  /** Create a span from a text selection (code-point offsets). */
  createSpan(taskName: string, label: string, start: number, end: number): DraftSpan {
    const task = taskByName(this.schema, taskName);
    if (!task || task.kind !== "span") {
      throw new RuleViolationError(RULE_UNKNOWN_TASK, `no span task '${taskName}'`);
    }
    if (!task.labels.includes(label)) {
      throw new RuleViolationError(RULE_UNKNOWN_LABEL, `'${label}' is not a ${taskName} label`);
    }
    const textLen = codePointLength(this.document.text);
    if (!(0 <= start && start < end && end <= textLen)) {
      throw new RuleViolationError(
        RULE_SPAN_OUT_OF_RANGE,
        `[${start}, ${end}) outside text of length ${textLen}`,
      );
    }
    const span: DraftSpan = {
      id: `s${this.nextId++}`,
      task: taskName,
      label,
      start,
      end,
      factTypes: [],
      countValue: null,
      countQualifier: null,
      dateValue: null,
    };
    this.spans.push(span);
    return span;
  }

  removeSpan(spanId: string): void {
    this.spans = this.spans.filter((s) => s.id !== spanId);
    this.relations = this.relations.filter((r) => r.source !== spanId && r.target !== spanId);
  }

  span(spanId: string): DraftSpan {
    const span = this.spans.find((s) => s.id === spanId);
    if (!span) {
      throw new RuleViolationError(RULE_RELATION_UNKNOWN_SPAN, `no span '${spanId}'`, [spanId]);
    }
    return span;
  }

  allSpans(): readonly DraftSpan[] {
    return this.spans;
  }

  allRelations(): readonly RelationJson[] {
    return this.relations;
  }

  setFactTypes(spanId: string, factTypes: string[]): void {
    const span = this.span(spanId);
    if (span.task !== this.factTask) {
      throw new RuleViolationError(
        "fact-types-on-non-fact",
        `span ${spanId} (${span.task}) cannot carry fact types`,
        [spanId],
      );
    }
    const known = taskByName(this.schema, this.factTask)?.nested_choice?.labels ?? [];
    for (const ft of factTypes) {
      if (!known.includes(ft)) {
        throw new RuleViolationError("unknown-fact-type", `'${ft}' is not a configured fact type`, [spanId]);
      }
    }
    span.factTypes = [...new Set(factTypes)].sort();
  }

  // -- relations --------------------------------------------------------------

  /** Link an attribute span to the fact it describes. Blocked unless the
   * source is a fact span and the target is not. */
  linkRelation(sourceId: string, targetId: string): RelationJson {
    const source = this.span(sourceId);
    const target = this.span(targetId);
    if (source.task !== this.factTask) {
      throw new RuleViolationError(
        RULE_RELATION_SOURCE_NOT_FACT,
        `relation source ${source.id} is a ${source.task} span, not a fact`,
        [source.id],
      );
    }
    if (target.task === this.factTask) {
      throw new RuleViolationError(
        RULE_RELATION_TARGET_IS_FACT,
        `relation target ${target.id} is a fact span`,
        [target.id],
      );
    }
    const existing = this.relations.find((r) => r.source === sourceId && r.target === targetId);
    if (existing) return existing;
    const relation = { source: sourceId, target: targetId };
    this.relations.push(relation);
    return relation;
  }

  unlinkRelation(sourceId: string, targetId: string): void {
    this.relations = this.relations.filter(
      (r) => !(r.source === sourceId && r.target === targetId),
    );
  }

  // -- transcriptions -----------------------------------------------------------

  /** Edit a nested transcription field by its schema name. Integer fields
   * take digits; the date field masks to 8 digits and auto-normalizes
   * separators ("2019-03-05" becomes "20190305"). Empty input clears. */
  editTranscription(spanId: string, field: string, value: string): void {
    const span = this.span(spanId);
    const task = taskByName(this.schema, span.task);
    const def = task?.nested_transcriptions.find((t) => t.name === field);
    if (!def) {
      throw new RuleViolationError(
        RULE_FIELD_NOT_ALLOWED,
        `span ${spanId} (${span.task}) has no '${field}' field`,
        [spanId],
      );
    }
    const trimmed = value.trim();
    switch (def.format) {
      case "integer": {
        if (trimmed === "") {
          span.countValue = null;
          return;
        }
        const digits = trimmed.replace(/[,\s]/g, "");
        if (!/^\d+$/.test(digits)) {
          throw new RuleViolationError(RULE_BAD_COUNT, `'${value}' is not a whole number`, [spanId]);
        }
        span.countValue = Number(digits);
        return;
      }
      case "yyyymmdd": {
        span.dateValue = trimmed === "" ? null : maskDate(trimmed);
        return;
      }
      case "text": {
        span.countQualifier = trimmed === "" ? null : trimmed;
        return;
      }
    }
  }

  // -- interchange ---------------------------------------------------------------

  /** The annotation interchange object, exactly as the server stores it. */
  serialize(): AnnotationJson {
    return {
      document_id: this.document.id,
      annotator_id: this.annotatorId,
      relevance: this.relevance,
      doc_type: this.docType,
      spans: this.spans.map((s) => {
        const out: SpanJson = {
          id: s.id,
          task: s.task,
          label: s.label,
          start: s.start,
          end: s.end,
        };
        if (s.factTypes.length > 0) out.fact_types = [...s.factTypes].sort();
        if (s.countValue !== null) out.count_value = s.countValue;
        if (s.countQualifier !== null) out.count_qualifier = s.countQualifier;
        if (s.dateValue !== null) out.date_value = s.dateValue;
        return out;
      }),
      relations: this.relations.map((r) => ({ source: r.source, target: r.target })),
      round: this.round,
      submitted_at: null,
    };
  }

  /** Rebuild a draft from a stored annotation (draft persistence, review
   * rounds). Round-trips: load(serialize()) reproduces the same state. */
  static load(
    document: DocumentJson,
    schema: SchemaDef,
    annotation: AnnotationJson,
  ): Draft {
    const draft = new Draft(document, schema, annotation.annotator_id, annotation.round);
    draft.relevance = annotation.relevance;
    draft.docType = annotation.doc_type;
    draft.spans = annotation.spans.map((s) => ({
      id: s.id,
      task: s.task,
      label: s.label,
      start: s.start,
      end: s.end,
      factTypes: s.fact_types ? [...s.fact_types].sort() : [],
      countValue: s.count_value ?? null,
      countQualifier: s.count_qualifier ?? null,
      dateValue: s.date_value ?? null,
    }));
    draft.relations = annotation.relations.map((r) => ({ source: r.source, target: r.target }));
    const maxNumeric = annotation.spans
      .map((s) => (/^s(\d+)$/.exec(s.id)?.[1] ? Number(/^s(\d+)$/.exec(s.id)![1]) : 0))
      .reduce((a, b) => Math.max(a, b), 0);
    draft.nextId = maxNumeric + 1;
    return draft;
  }

  /** Local constraint check (mirrors the server; never replaces it). */
  check(): ViolationJson[] {
    return checkDraft(this.document, this.schema, this.serialize());
  }
}
