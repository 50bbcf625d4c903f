"""Task-level agreement statistics and the full per-project report.

Classification tasks yield one α over document-level units. Span tasks
yield four variants:

* ``labels``      — per annotator pair, both spatial sortings of the two
                    span lists are walked rank by rank and the slot labels
                    compared nominally (the Fact task compares fact-type
                    sets).
* ``overlap``     — same slots, but the compared values are the span
                    extents under a binary does-it-overlap distance.
* ``overlap_sim`` — like overlap, with text similarity above the
                    threshold also counting as agreement.
* ``merged``      — labels compared only on span pairs the two-step
                    alignment (overlap, then similarity) matched up.

Span tasks are measured on documents at least two annotators called
Relevant; units never mix annotator pairs or documents, and a document
where only one annotator marked spans contributes no pairable units.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from ..errors import NoEligibleUnitsError
from ..jsonio import dumps_pretty
from ..schema import (
    KIND_CLASSIFICATION,
    KIND_SPAN,
    Annotation,
    Document,
    SchemaDef,
    SpanLabel,
    TaskDef,
    default_schema,
)
from .alignment import (
    DEFAULT_SIMILARITY_THRESHOLD,
    SIMILARITY_METRIC_NAME,
    align_spans,
    span_overlap,
    text_similarity,
)
from .alpha import CoincidenceSummary, ReliabilityData, Unit, alpha

MODES = ("labels", "overlap", "overlap_sim", "merged")

ROUND_INITIAL = "initial"
ROUND_REVIEW = "review"
ROUND_CURRENT = "current"
ROUND_CHOICES = (ROUND_INITIAL, ROUND_REVIEW, ROUND_CURRENT)

RELEVANT = "Relevant"
MIN_ANNOTATIONS = 2


def select_round(annotations: Iterable[Annotation], round: str = ROUND_CURRENT) -> list[Annotation]:
    """Pick one annotation per (document, annotator) for the chosen round.

    ``current`` takes the review-round annotation where one exists and the
    initial one otherwise; ``initial``/``review`` take that round only.
    """
    if round not in ROUND_CHOICES:
        raise ValueError(f"round must be one of {ROUND_CHOICES}, got {round!r}")
    if round in (ROUND_INITIAL, ROUND_REVIEW):
        return [a for a in annotations if a.round == round]
    latest: dict[tuple[str, str], Annotation] = {}
    for ann in annotations:
        key = (ann.document_id, ann.annotator_id)
        if key not in latest or ann.round == ROUND_REVIEW:
            latest[key] = ann
    return [latest[k] for k in sorted(latest)]


def _group_by_document(annotations: Iterable[Annotation]) -> dict[str, list[Annotation]]:
    groups: dict[str, list[Annotation]] = {}
    for ann in annotations:
        groups.setdefault(ann.document_id, []).append(ann)
    for anns in groups.values():
        anns.sort(key=lambda a: a.annotator_id)
    return dict(sorted(groups.items()))


def _classification_value(ann: Annotation, task_name: str) -> Optional[str]:
    if task_name == "Relevance":
        return ann.relevance
    if task_name == "Type":
        return ann.doc_type
    return None


def _span_label_value(span: SpanLabel, fact_task: Optional[str]) -> Any:
    if fact_task is not None and span.task == fact_task:
        return frozenset(span.fact_types)
    return span.label


def _fact_task_name(schema: SchemaDef) -> Optional[str]:
    try:
        return schema.fact_task.name
    except KeyError:
        return None


def _span_sort_key(span: SpanLabel) -> tuple:
    return (span.start, span.end, span.label, span.id)


def _extent_overlap_distance(a: tuple, b: tuple) -> float:
    return 0.0 if max(a[0], b[0]) < min(a[1], b[1]) else 1.0


def _make_overlap_sim_distance(
    threshold: float, similarity: Callable[[str, str], float]
) -> Callable[[tuple, tuple], float]:
    def distance(a: tuple, b: tuple) -> float:
        if max(a[0], b[0]) < min(a[1], b[1]):
            return 0.0
        return 0.0 if similarity(a[2], b[2]) >= threshold else 1.0

    distance.__name__ = "overlap-or-similarity"
    return distance


def _as_document_map(documents: Iterable[Document] | Mapping[str, Document]) -> dict[str, Document]:
    if isinstance(documents, Mapping):
        return dict(documents)
    return {d.id: d for d in documents}


def task_alpha(
    documents: Iterable[Document] | Mapping[str, Document],
    annotations: Sequence[Annotation],
    task: str | TaskDef,
    mode: str = "labels",
    *,
    schema: Optional[SchemaDef] = None,
    threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
    similarity: Callable[[str, str], float] = text_similarity,
    metric: Optional[str] = None,
    fact_comparison: str = "set-equality",
) -> CoincidenceSummary:
    """α for one task in one mode over multiply-annotated documents.

    Only documents with ≥ 2 annotations count; span tasks additionally
    require ≥ 2 annotators to have called the document Relevant. Raises
    NoEligibleUnitsError when nothing survives the filters.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    schema = schema or default_schema()
    task_def = schema.task(task) if isinstance(task, str) else task
    docs = _as_document_map(documents)
    groups = {
        doc_id: anns
        for doc_id, anns in _group_by_document(annotations).items()
        if len(anns) >= MIN_ANNOTATIONS
    }

    if task_def.kind == KIND_CLASSIFICATION:
        if mode != "labels":
            raise ValueError(f"classification task {task_def.name!r} supports labels mode only")
        distance = metric or ("tailored_type" if task_def.name == "Type" else "nominal")
        units = []
        for doc_id, anns in groups.items():
            values = {
                a.annotator_id: _classification_value(a, task_def.name) for a in anns
            }
            units.append(Unit(unit_id=doc_id, values=values))
        return alpha(ReliabilityData(units=tuple(units), distance=distance))

    if task_def.kind != KIND_SPAN:
        raise ValueError(f"task {task_def.name!r} has no agreement statistic")

    fact_task = _fact_task_name(schema)
    span_groups = {
        doc_id: anns
        for doc_id, anns in groups.items()
        if sum(1 for a in anns if a.relevance == RELEVANT) >= 2
    }

    units = []
    if mode == "merged":
        distance = fact_comparison if (fact_task == task_def.name) else (metric or "nominal")
        for doc_id, anns in span_groups.items():
            doc = docs[doc_id]
            for ann_a, ann_b in combinations(anns, 2):
                pairs = align_spans(
                    doc, ann_a, ann_b, task_def.name, threshold=threshold, similarity=similarity
                )
                for i, pair in enumerate(pairs):
                    units.append(
                        Unit(
                            unit_id=f"{doc_id}:{ann_a.annotator_id}|{ann_b.annotator_id}:{i}",
                            values={
                                ann_a.annotator_id: _span_label_value(pair.span_a, fact_task),
                                ann_b.annotator_id: _span_label_value(pair.span_b, fact_task),
                            },
                        )
                    )
        return alpha(ReliabilityData(units=tuple(units), distance=distance))

    if mode == "labels":
        distance = fact_comparison if (fact_task == task_def.name) else (metric or "nominal")

        def value_of(span: SpanLabel, doc: Document) -> Any:
            return _span_label_value(span, fact_task)

    elif mode == "overlap":
        distance = _extent_overlap_distance

        def value_of(span: SpanLabel, doc: Document) -> Any:
            return (span.start, span.end)

    else:  # overlap_sim
        distance = _make_overlap_sim_distance(threshold, similarity)

        def value_of(span: SpanLabel, doc: Document) -> Any:
            return (span.start, span.end, doc.text[span.start:span.end])

    for doc_id, anns in span_groups.items():
        doc = docs[doc_id]
        for ann_a, ann_b in combinations(anns, 2):
            spans_a = sorted(ann_a.spans_for(task_def.name), key=_span_sort_key)
            spans_b = sorted(ann_b.spans_for(task_def.name), key=_span_sort_key)
            for i in range(max(len(spans_a), len(spans_b))):
                values = {
                    ann_a.annotator_id: value_of(spans_a[i], doc) if i < len(spans_a) else None,
                    ann_b.annotator_id: value_of(spans_b[i], doc) if i < len(spans_b) else None,
                }
                units.append(
                    Unit(
                        unit_id=f"{doc_id}:{ann_a.annotator_id}|{ann_b.annotator_id}:{i}",
                        values=values,
                    )
                )
    return alpha(ReliabilityData(units=tuple(units), distance=distance))


@dataclass(frozen=True)
class TaskAgreement:
    """One report row: the α cells that apply to the task."""

    task: str
    metric: str
    alpha_labels: Optional[float] = None
    alpha_overlap: Optional[float] = None
    alpha_overlap_sim: Optional[float] = None
    alpha_merged: Optional[float] = None

    def to_json(self) -> dict[str, Any]:
        return {
            "task": self.task,
            "metric": self.metric,
            "alpha_labels": self.alpha_labels,
            "alpha_overlap": self.alpha_overlap,
            "alpha_overlap_sim": self.alpha_overlap_sim,
            "alpha_merged": self.alpha_merged,
        }


@dataclass(frozen=True)
class AgreementReport:
    round: str
    threshold: float
    similarity_metric: str
    consensus_documents: int
    rows: tuple[TaskAgreement, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "round": self.round,
            "threshold": self.threshold,
            "similarity": self.similarity_metric,
            "consensus_documents": self.consensus_documents,
            "rows": [r.to_json() for r in self.rows],
        }

    def to_text(self) -> str:
        headers = ("Task", "Metric", "Labels", "Overlap", "Overlap+Sim", "Merged")

        def cell(value: Optional[float]) -> str:
            return f"{value:.3f}" if value is not None else "-"

        lines = [
            f"round={self.round} threshold={self.threshold} "
            f"similarity={self.similarity_metric} "
            f"consensus_documents={self.consensus_documents}"
        ]
        table = [headers] + [
            (
                r.task,
                r.metric,
                cell(r.alpha_labels),
                cell(r.alpha_overlap),
                cell(r.alpha_overlap_sim),
                cell(r.alpha_merged),
            )
            for r in self.rows
        ]
        widths = [max(len(row[c]) for row in table) for c in range(len(headers))]
        for row in table:
            lines.append("  ".join(val.ljust(w) for val, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def row(self, task: str) -> TaskAgreement:
        for r in self.rows:
            if r.task == task:
                return r
        raise KeyError(task)


def agreement_report(
    documents: Iterable[Document] | Mapping[str, Document],
    annotations: Sequence[Annotation],
    schema: Optional[SchemaDef] = None,
    *,
    round: str = ROUND_CURRENT,
    threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
    similarity: Callable[[str, str], float] = text_similarity,
    fact_comparison: str = "set-equality",
) -> AgreementReport:
    """The full per-task agreement table.

    Classification rows carry one labels-mode α; span rows carry all four
    variants. Span tasks for which no annotator marked any span are
    omitted, relation tasks and transcription fields have no α, and a
    task whose data cannot support the statistic gets empty cells.
    """
    schema = schema or default_schema()
    docs = _as_document_map(documents)
    selected = select_round(annotations, round)
    groups = {
        doc_id: anns
        for doc_id, anns in _group_by_document(selected).items()
        if len(anns) >= MIN_ANNOTATIONS
    }
    eligible: list[Annotation] = [a for anns in groups.values() for a in anns]

    def compute(task_def: TaskDef, mode: str) -> Optional[float]:
        try:
            summary = task_alpha(
                docs,
                eligible,
                task_def,
                mode,
                schema=schema,
                threshold=threshold,
                similarity=similarity,
                fact_comparison=fact_comparison,
            )
        except NoEligibleUnitsError:
            return None
        return summary.alpha

    rows: list[TaskAgreement] = []
    if groups:
        for task_def in schema.tasks:
            if task_def.kind == KIND_CLASSIFICATION:
                metric = "tailored_type" if task_def.name == "Type" else "nominal"
                rows.append(
                    TaskAgreement(
                        task=task_def.name,
                        metric=metric,
                        alpha_labels=compute(task_def, "labels"),
                    )
                )
            elif task_def.kind == KIND_SPAN:
                has_spans = any(ann.spans_for(task_def.name) for ann in eligible)
                if not has_spans:
                    continue
                fact_task = _fact_task_name(schema)
                metric = fact_comparison if task_def.name == fact_task else "nominal"
                rows.append(
                    TaskAgreement(
                        task=task_def.name,
                        metric=metric,
                        alpha_labels=compute(task_def, "labels"),
                        alpha_overlap=compute(task_def, "overlap"),
                        alpha_overlap_sim=compute(task_def, "overlap_sim"),
                        alpha_merged=compute(task_def, "merged"),
                    )
                )
    return AgreementReport(
        round=round,
        threshold=threshold,
        similarity_metric=SIMILARITY_METRIC_NAME,
        consensus_documents=len(groups),
        rows=tuple(rows),
    )
