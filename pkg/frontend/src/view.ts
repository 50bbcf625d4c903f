/** View model and DOM rendering: article pane on the left, task/label
 * palette on the right. Everything shown is derived from the served
 * schema and the draft — tasks and labels are never hard-coded.
 */

import { Draft, DraftSpan } from "./draft.js";
import { codePointToUtf16 } from "./text.js";
import { TaskDef } from "./types.js";

export interface SpanChipVM {
  id: string;
  task: string;
  label: string;
  start: number;
  end: number;
  text: string;
  factTypes: string[];
  countValue: number | null;
  countQualifier: string | null;
  dateValue: string | null;
  flagged: boolean;
  flagMessages: string[];
}

export interface TaskGroupVM {
  name: string;
  kind: TaskDef["kind"];
  labels: string[];
  required: boolean;
  /** Chosen label for classification tasks. */
  selected: string | null;
  /** Optional tasks fade out once the document is marked not relevant. */
  deEmphasized: boolean;
  chips: SpanChipVM[];
  transcriptionFields: string[];
  factTypeChoices: string[];
}

export interface ArticleSegmentVM {
  text: string;
  spanIds: string[];
  flagged: boolean;
}

export interface WorkspaceVM {
  documentId: string;
  publicationDate: string | null;
  segments: ArticleSegmentVM[];
  taskGroups: TaskGroupVM[];
  canSubmit: boolean;
  formErrors: string[];
  remaining: number;
}

function sliceByCodePoints(text: string, start: number, end: number): string {
  return text.slice(codePointToUtf16(text, start), codePointToUtf16(text, end));
}

/** Split the article into segments at every span boundary so overlapping
 * spans render without nesting; each segment knows which spans cover it. */
export function articleSegments(
  text: string,
  spans: readonly DraftSpan[],
  flagged: ReadonlyMap<string, string[]>,
): ArticleSegmentVM[] {
  const textLen = [...text].length;
  const bounds = new Set<number>([0, textLen]);
  for (const s of spans) {
    if (s.start >= 0 && s.start <= textLen) bounds.add(s.start);
    if (s.end >= 0 && s.end <= textLen) bounds.add(s.end);
  }
  const points = [...bounds].sort((a, b) => a - b);
  const segments: ArticleSegmentVM[] = [];
  for (let i = 0; i + 1 < points.length; i++) {
    const start = points[i]!;
    const end = points[i + 1]!;
    const covering = spans.filter((s) => s.start <= start && end <= s.end);
    segments.push({
      text: sliceByCodePoints(text, start, end),
      spanIds: covering.map((s) => s.id),
      flagged: covering.some((s) => flagged.has(s.id)),
    });
  }
  return segments;
}

export function buildViewModel(
  draft: Draft,
  flagged: ReadonlyMap<string, string[]>,
  formErrors: readonly string[],
  remaining: number,
): WorkspaceVM {
  const notRelevant = draft.relevance !== null && draft.relevance !== "Relevant";
  const taskGroups = draft.schema.tasks.map((task): TaskGroupVM => {
    const chips = draft
      .allSpans()
      .filter((s) => s.task === task.name)
      .map((s): SpanChipVM => ({
        id: s.id,
        task: s.task,
        label: s.label,
        start: s.start,
        end: s.end,
        text: sliceByCodePoints(draft.document.text, s.start, s.end),
        factTypes: [...s.factTypes],
        countValue: s.countValue,
        countQualifier: s.countQualifier,
        dateValue: s.dateValue,
        flagged: flagged.has(s.id),
        flagMessages: flagged.get(s.id) ?? [],
      }));
    return {
      name: task.name,
      kind: task.kind,
      labels: [...task.labels],
      required: task.required,
      selected:
        task.name === "Relevance" ? draft.relevance : task.name === "Type" ? draft.docType : null,
      deEmphasized: notRelevant && !task.required,
      chips,
      transcriptionFields: task.nested_transcriptions.map((t) => t.name),
      factTypeChoices: task.nested_choice?.labels ?? [],
    };
  });
  return {
    documentId: draft.document.id,
    publicationDate: draft.document.publication_date,
    segments: articleSegments(draft.document.text, draft.allSpans(), flagged),
    taskGroups,
    canSubmit: draft.canSubmit(),
    formErrors: [...formErrors],
    remaining,
  };
}

/** Handlers the rendered controls call back into. */
export interface ViewHandlers {
  onSelectLabel(task: string, label: string): void;
  onSubmit(): void;
}

/** Render the workspace into `root` (replacing its contents). */
export function renderWorkspace(root: HTMLElement, vm: WorkspaceVM, handlers: ViewHandlers): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  root.classList.add("workspace");

  const article = doc.createElement("section");
  article.className = "article-pane";
  const dateLine = doc.createElement("p");
  dateLine.className = "publication-date";
  dateLine.textContent = vm.publicationDate ? `Published ${vm.publicationDate}` : "Publication date unknown";
  article.appendChild(dateLine);
  const body = doc.createElement("p");
  body.className = "article-text";
  for (const segment of vm.segments) {
    if (segment.spanIds.length === 0) {
      body.appendChild(doc.createTextNode(segment.text));
      continue;
    }
    const mark = doc.createElement("mark");
    mark.textContent = segment.text;
    mark.dataset.spanIds = segment.spanIds.join(" ");
    if (segment.flagged) mark.classList.add("flagged");
    body.appendChild(mark);
  }
  article.appendChild(body);
  root.appendChild(article);

  const palette = doc.createElement("section");
  palette.className = "palette";
  for (const group of vm.taskGroups) {
    const groupEl = doc.createElement("fieldset");
    groupEl.className = `task-group task-kind-${group.kind}`;
    groupEl.dataset.task = group.name;
    if (group.deEmphasized) groupEl.classList.add("de-emphasized");
    const legend = doc.createElement("legend");
    legend.textContent = group.required ? `${group.name} *` : group.name;
    groupEl.appendChild(legend);

    const labelList = doc.createElement("div");
    labelList.className = "label-list"; // scrollable via CSS for long lists
    for (const label of group.labels) {
      const button = doc.createElement("button");
      button.type = "button";
      button.textContent = label;
      if (group.selected === label) button.classList.add("selected");
      button.addEventListener("click", () => handlers.onSelectLabel(group.name, label));
      labelList.appendChild(button);
    }
    groupEl.appendChild(labelList);

    for (const chip of group.chips) {
      const chipEl = doc.createElement("span");
      chipEl.className = "span-chip";
      chipEl.dataset.spanId = chip.id;
      chipEl.textContent = `${chip.label}: ${chip.text}`;
      if (chip.flagged) {
        chipEl.classList.add("flagged");
        chipEl.title = chip.flagMessages.join("\n");
      }
      groupEl.appendChild(chipEl);
    }
    palette.appendChild(groupEl);
  }

  const errors = doc.createElement("ul");
  errors.className = "form-errors";
  for (const message of vm.formErrors) {
    const item = doc.createElement("li");
    item.textContent = message;
    errors.appendChild(item);
  }
  palette.appendChild(errors);

  const submit = doc.createElement("button");
  submit.type = "button";
  submit.className = "submit";
  submit.textContent = vm.remaining > 0 ? `Submit (${vm.remaining} remaining)` : "Submit";
  submit.disabled = !vm.canSubmit;
  submit.addEventListener("click", () => handlers.onSubmit());
  palette.appendChild(submit);

  root.appendChild(palette);
}
