/** Wire types for the annotation service; shapes mirror the server's JSON. */

export interface TranscriptionDef {
  name: string;
  format: "integer" | "text" | "yyyymmdd";
}

export interface NestedChoiceDef {
  name: string;
  multi_label: boolean;
  labels: string[];
}

export type TaskKind = "classification" | "span" | "relation";

export interface TaskDef {
  name: string;
  kind: TaskKind;
  required: boolean;
  multi_label: boolean;
  labels: string[];
  nested_transcriptions: TranscriptionDef[];
  nested_choice?: NestedChoiceDef;
}

export interface SchemaDef {
  version: number;
  tasks: TaskDef[];
  known_qualifiers: string[];
}

export interface DocumentJson {
  id: string;
  url: string;
  language: string;
  publication_date: string | null;
  text: string;
  themes: string[];
  dataset: string;
}

export interface SpanJson {
  id: string;
  task: string;
  label: string;
  start: number;
  end: number;
  fact_types?: string[];
  count_value?: number;
  count_qualifier?: string;
  date_value?: string;
}

export interface RelationJson {
  source: string;
  target: string;
}

export interface AnnotationJson {
  document_id: string;
  annotator_id: string;
  relevance: string | null;
  doc_type: string | null;
  spans: SpanJson[];
  relations: RelationJson[];
  round: string;
  submitted_at: string | null;
}

export interface ViolationJson {
  rule_id: string;
  severity: "error" | "warning";
  message: string;
  offending_ids: string[];
}

export interface ValidationReportJson {
  violations: ViolationJson[];
  ok: boolean;
}

export interface ErrorBody {
  error_code: string;
  message: string;
  details: unknown;
}

export interface NextAssignment {
  document: DocumentJson | null;
  schema: SchemaDef | null;
  publication_date?: string | null;
  remaining: number;
}

export interface SubmitResult {
  stored_id: string;
  document_id: string;
}

/** The span task whose spans may source relations: the one carrying the
 * nested fact-type choice. Derived from the served schema, never hard-coded. */
export function factTaskName(schema: SchemaDef): string {
  const task = schema.tasks.find((t) => t.kind === "span" && t.nested_choice);
  if (!task) throw new Error("schema has no fact task (span task with a nested choice)");
  return task.name;
}

export function taskByName(schema: SchemaDef, name: string): TaskDef | undefined {
  return schema.tasks.find((t) => t.name === name);
}

export function classificationTasks(schema: SchemaDef): TaskDef[] {
  return schema.tasks.filter((t) => t.kind === "classification");
}

export function spanTasks(schema: SchemaDef): TaskDef[] {
  return schema.tasks.filter((t) => t.kind === "span");
}
