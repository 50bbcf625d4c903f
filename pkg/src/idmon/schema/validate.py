"""Structural validation of annotations against a schema.

``validate_annotation`` is total: any well-formed Annotation yields a
report listing every violated rule (never just the first), and never
raises for content problems. Offsets beyond the text, unknown labels,
bad transcriptions, and dangling relations are all reported as
violations rather than crashes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from ..errors import UnknownDocumentError
from .model import (
    KIND_SPAN,
    Annotation,
    Document,
    SchemaDef,
    SpanLabel,
    TaskDef,
    parse_yyyymmdd,
)

SEV_ERROR = "error"
SEV_WARNING = "warning"

RULE_REQUIRED_MISSING = "required-task-missing"
RULE_UNKNOWN_LABEL = "unknown-label"
RULE_UNKNOWN_TASK = "unknown-task"
RULE_SPAN_OUT_OF_RANGE = "span-out-of-range"
RULE_DUPLICATE_SPAN_ID = "duplicate-span-id"
RULE_MISSING_FACT_TYPE = "missing-fact-type"
RULE_FACT_TYPES_ON_NON_FACT = "fact-types-on-non-fact"
RULE_UNKNOWN_FACT_TYPE = "unknown-fact-type"
RULE_BAD_DATE = "bad-date"
RULE_BAD_COUNT = "bad-count"
RULE_FIELD_NOT_ALLOWED = "field-not-allowed"
RULE_ORPHAN_SPAN = "orphan-span"
RULE_RELATION_SOURCE_NOT_FACT = "relation-source-not-fact"
RULE_RELATION_TARGET_IS_FACT = "relation-target-is-fact"
RULE_RELATION_UNKNOWN_SPAN = "relation-unknown-span"
RULE_MULTI_LABEL_EXTENT = "multi-label-extent"
RULE_QUALIFIER_UNKNOWN = "qualifier-unknown"

# Every rule the validator can emit, with its severity. The browser client
# mirrors a subset of these; it must never invent rules of its own.
RULE_SEVERITIES: dict[str, str] = {
    RULE_REQUIRED_MISSING: SEV_ERROR,
    RULE_UNKNOWN_LABEL: SEV_ERROR,
    RULE_UNKNOWN_TASK: SEV_ERROR,
    RULE_SPAN_OUT_OF_RANGE: SEV_ERROR,
    RULE_DUPLICATE_SPAN_ID: SEV_ERROR,
    RULE_MISSING_FACT_TYPE: SEV_ERROR,
    RULE_FACT_TYPES_ON_NON_FACT: SEV_ERROR,
    RULE_UNKNOWN_FACT_TYPE: SEV_ERROR,
    RULE_BAD_DATE: SEV_ERROR,
    RULE_BAD_COUNT: SEV_ERROR,
    RULE_FIELD_NOT_ALLOWED: SEV_ERROR,
    RULE_ORPHAN_SPAN: SEV_ERROR,
    RULE_RELATION_SOURCE_NOT_FACT: SEV_ERROR,
    RULE_RELATION_TARGET_IS_FACT: SEV_ERROR,
    RULE_RELATION_UNKNOWN_SPAN: SEV_ERROR,
    RULE_MULTI_LABEL_EXTENT: SEV_ERROR,
    RULE_QUALIFIER_UNKNOWN: SEV_WARNING,
}


@dataclass(frozen=True)
class Violation:
    rule_id: str
    severity: str
    message: str
    offending_ids: tuple[str, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "rule_id": self.rule_id,
            "severity": self.severity,
            "message": self.message,
            "offending_ids": list(self.offending_ids),
        }


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    @property
    def ok(self) -> bool:
        """True when submission may proceed: no error-severity violations."""
        return all(v.severity != SEV_ERROR for v in self.violations)

    @property
    def errors(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == SEV_ERROR]

    @property
    def warnings(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == SEV_WARNING]

    def rule_ids(self) -> list[str]:
        return [v.rule_id for v in self.violations]

    def has_rule(self, rule_id: str) -> bool:
        return any(v.rule_id == rule_id or v.rule_id.startswith(rule_id + ":") for v in self.violations)

    def to_json(self) -> dict[str, Any]:
        return {"violations": [v.to_json() for v in self.violations], "ok": self.ok}


def _allows(task: TaskDef, fmt: str) -> bool:
    return any(t.format == fmt for t in task.nested_transcriptions)


def validate_annotation(doc: Document, ann: Annotation, schema: SchemaDef) -> ValidationReport:
    """Check every structural constraint; returns the full violation list."""
    if ann.document_id != doc.id:
        raise UnknownDocumentError(
            f"annotation targets document {ann.document_id!r}, got {doc.id!r}"
        )

    out: list[Violation] = []
    add = out.append
    text_len = len(doc.text)
    fact_task = schema.fact_task
    fact_type_labels = set(fact_task.nested_choice.labels)  # type: ignore[union-attr]
    span_tasks = {t.name: t for t in schema.span_tasks}

    for t in schema.classification_tasks:
        value = {"Relevance": ann.relevance, "Type": ann.doc_type}.get(t.name)
        if value is None:
            add(
                Violation(
                    f"{RULE_REQUIRED_MISSING}:{t.name}",
                    SEV_ERROR,
                    f"required task {t.name} has no label",
                )
            )
        elif value not in t.labels:
            add(
                Violation(
                    RULE_UNKNOWN_LABEL,
                    SEV_ERROR,
                    f"{value!r} is not a {t.name} label",
                )
            )

    seen_ids: set[str] = set()
    for span in ann.spans:
        if span.id in seen_ids:
            add(
                Violation(
                    RULE_DUPLICATE_SPAN_ID,
                    SEV_ERROR,
                    f"span id {span.id!r} used more than once",
                    (span.id,),
                )
            )
        seen_ids.add(span.id)

        task = span_tasks.get(span.task)
        if task is None:
            add(
                Violation(
                    RULE_UNKNOWN_TASK,
                    SEV_ERROR,
                    f"span {span.id} names unknown span task {span.task!r}",
                    (span.id,),
                )
            )
            continue

        if span.label not in task.labels:
            add(
                Violation(
                    RULE_UNKNOWN_LABEL,
                    SEV_ERROR,
                    f"span {span.id}: {span.label!r} is not a {task.name} label",
                    (span.id,),
                )
            )

        if not (0 <= span.start < span.end <= text_len):
            add(
                Violation(
                    RULE_SPAN_OUT_OF_RANGE,
                    SEV_ERROR,
                    f"span {span.id}: [{span.start}, {span.end}) outside text of length {text_len}",
                    (span.id,),
                )
            )

        if task.name == fact_task.name:
            if not span.fact_types:
                add(
                    Violation(
                        RULE_MISSING_FACT_TYPE,
                        SEV_ERROR,
                        f"fact span {span.id} carries no fact type",
                        (span.id,),
                    )
                )
            else:
                for ft in sorted(span.fact_types - fact_type_labels):
                    add(
                        Violation(
                            RULE_UNKNOWN_FACT_TYPE,
                            SEV_ERROR,
                            f"span {span.id}: {ft!r} is not a configured fact type",
                            (span.id,),
                        )
                    )
        elif span.fact_types:
            add(
                Violation(
                    RULE_FACT_TYPES_ON_NON_FACT,
                    SEV_ERROR,
                    f"span {span.id} ({task.name}) carries fact types",
                    (span.id,),
                )
            )

        if span.count_value is not None:
            if not _allows(task, "integer"):
                add(
                    Violation(
                        RULE_FIELD_NOT_ALLOWED,
                        SEV_ERROR,
                        f"span {span.id} ({task.name}) does not take a count",
                        (span.id,),
                    )
                )
            elif span.count_value < 0:
                add(
                    Violation(
                        RULE_BAD_COUNT,
                        SEV_ERROR,
                        f"span {span.id}: count {span.count_value} is negative",
                        (span.id,),
                    )
                )

        if span.count_qualifier is not None:
            if not _allows(task, "text"):
                add(
                    Violation(
                        RULE_FIELD_NOT_ALLOWED,
                        SEV_ERROR,
                        f"span {span.id} ({task.name}) does not take a qualifier",
                        (span.id,),
                    )
                )
            elif schema.known_qualifiers and span.count_qualifier not in schema.known_qualifiers:
                add(
                    Violation(
                        RULE_QUALIFIER_UNKNOWN,
                        SEV_WARNING,
                        f"span {span.id}: qualifier {span.count_qualifier!r} is not in the known list",
                        (span.id,),
                    )
                )

        if span.date_value is not None:
            if not _allows(task, "yyyymmdd"):
                add(
                    Violation(
                        RULE_FIELD_NOT_ALLOWED,
                        SEV_ERROR,
                        f"span {span.id} ({task.name}) does not take a date",
                        (span.id,),
                    )
                )
            elif parse_yyyymmdd(span.date_value) is None:
                add(
                    Violation(
                        RULE_BAD_DATE,
                        SEV_ERROR,
                        f"span {span.id}: {span.date_value!r} is not an 8-digit calendar date",
                        (span.id,),
                    )
                )

    # Same task + identical extent must not carry different labels.
    by_extent: dict[tuple[str, int, int], list[SpanLabel]] = {}
    for span in ann.spans:
        by_extent.setdefault((span.task, span.start, span.end), []).append(span)
    for (task_name, start, end), group in by_extent.items():
        labels = {s.label for s in group}
        if len(labels) > 1:
            add(
                Violation(
                    RULE_MULTI_LABEL_EXTENT,
                    SEV_ERROR,
                    f"{task_name} spans at [{start}, {end}) carry different labels {sorted(labels)}",
                    tuple(s.id for s in group),
                )
            )

    by_id = ann.span_by_id()
    linked_targets: set[str] = set()
    for rel in ann.relations:
        src = by_id.get(rel.source)
        tgt = by_id.get(rel.target)
        if src is None or tgt is None:
            missing = [i for i, s in ((rel.source, src), (rel.target, tgt)) if s is None]
            add(
                Violation(
                    RULE_RELATION_UNKNOWN_SPAN,
                    SEV_ERROR,
                    f"relation references unknown span(s) {missing}",
                    tuple(missing),
                )
            )
            continue
        if src.task != fact_task.name:
            add(
                Violation(
                    RULE_RELATION_SOURCE_NOT_FACT,
                    SEV_ERROR,
                    f"relation source {src.id} is a {src.task} span, not a fact",
                    (src.id,),
                )
            )
        if tgt.task == fact_task.name:
            add(
                Violation(
                    RULE_RELATION_TARGET_IS_FACT,
                    SEV_ERROR,
                    f"relation target {tgt.id} is a fact span",
                    (tgt.id,),
                )
            )
        linked_targets.add(rel.target)

    # Attribute spans may not stand alone: each must hang off some fact.
    for span in ann.spans:
        if span.task in span_tasks and span.task != fact_task.name and span.id not in linked_targets:
            add(
                Violation(
                    RULE_ORPHAN_SPAN,
                    SEV_ERROR,
                    f"{span.task} span {span.id} is not linked to any fact",
                    (span.id,),
                )
            )

    return ValidationReport(out)
