"""Data model for documents, annotation schemas, and annotations.

Span offsets are Unicode code points in half-open [start, end) intervals;
Python string indices satisfy that convention directly.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Optional

from ..errors import ParseError

LANGUAGES = ("en", "fr", "es")
DATASETS = ("kili-en", "kili-fr", "kili-es", "amazon-sm", "amazon-mt", "custom")
ROUNDS = ("initial", "review")

KIND_CLASSIFICATION = "classification"
KIND_SPAN = "span"
KIND_RELATION = "relation"


@dataclass(frozen=True)
class Document:
    """One news article entering the annotation pipeline."""

    id: str
    url: str
    language: str
    publication_date: Optional[dt.date]
    text: str
    themes: frozenset[str] = frozenset()
    dataset: str = "custom"

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "url": self.url,
            "language": self.language,
            "publication_date": self.publication_date.isoformat() if self.publication_date else None,
            "text": self.text,
            "themes": sorted(self.themes),
            "dataset": self.dataset,
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Document":
        try:
            raw_date = obj.get("publication_date")
            return cls(
                id=str(obj["id"]),
                url=str(obj.get("url", "")),
                language=str(obj.get("language", "en")),
                publication_date=dt.date.fromisoformat(raw_date) if raw_date else None,
                text=str(obj.get("text", "")),
                themes=frozenset(obj.get("themes", ())),
                dataset=str(obj.get("dataset", "custom")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed document record: {exc}") from exc


@dataclass(frozen=True)
class NestedChoice:
    """A multiple-choice field nested under a span task (the Fact-Type list)."""

    name: str
    multi_label: bool
    labels: tuple[str, ...]


@dataclass(frozen=True)
class Transcription:
    """A typed free-entry field nested under a span task."""

    name: str
    format: str  # "integer" | "text" | "yyyymmdd"


@dataclass(frozen=True)
class TaskDef:
    name: str
    kind: str  # classification | span | relation
    required: bool
    multi_label: bool
    labels: tuple[str, ...]
    nested_choice: Optional[NestedChoice] = None
    nested_transcriptions: tuple[Transcription, ...] = ()

    def to_json(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "name": self.name,
            "kind": self.kind,
            "required": self.required,
            "multi_label": self.multi_label,
            "labels": list(self.labels),
            "nested_transcriptions": [
                {"name": t.name, "format": t.format} for t in self.nested_transcriptions
            ],
        }
        if self.nested_choice is not None:
            obj["nested_choice"] = {
                "name": self.nested_choice.name,
                "multi_label": self.nested_choice.multi_label,
                "labels": list(self.nested_choice.labels),
            }
        return obj


@dataclass(frozen=True)
class SchemaDef:
    """Machine-readable task definitions driving validation and the UI."""

    version: int
    tasks: tuple[TaskDef, ...]
    known_qualifiers: tuple[str, ...] = ()

    def task(self, name: str) -> TaskDef:
        for t in self.tasks:
            if t.name == name:
                return t
        raise KeyError(name)

    @property
    def classification_tasks(self) -> tuple[TaskDef, ...]:
        return tuple(t for t in self.tasks if t.kind == KIND_CLASSIFICATION)

    @property
    def span_tasks(self) -> tuple[TaskDef, ...]:
        return tuple(t for t in self.tasks if t.kind == KIND_SPAN)

    @property
    def fact_task(self) -> TaskDef:
        for t in self.tasks:
            if t.kind == KIND_SPAN and t.nested_choice is not None:
                return t
        raise KeyError("no span task with a nested choice")

    @property
    def fact_type_labels(self) -> tuple[str, ...]:
        return self.fact_task.nested_choice.labels  # type: ignore[union-attr]

    def to_json(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "tasks": [t.to_json() for t in self.tasks],
            "known_qualifiers": list(self.known_qualifiers),
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "SchemaDef":
        try:
            tasks = []
            for raw in obj["tasks"]:
                nc = raw.get("nested_choice")
                tasks.append(
                    TaskDef(
                        name=str(raw["name"]),
                        kind=str(raw["kind"]),
                        required=bool(raw["required"]),
                        multi_label=bool(raw["multi_label"]),
                        labels=tuple(raw.get("labels", ())),
                        nested_choice=NestedChoice(
                            name=str(nc["name"]),
                            multi_label=bool(nc["multi_label"]),
                            labels=tuple(nc["labels"]),
                        )
                        if nc
                        else None,
                        nested_transcriptions=tuple(
                            Transcription(name=str(t["name"]), format=str(t["format"]))
                            for t in raw.get("nested_transcriptions", ())
                        ),
                    )
                )
            return cls(
                version=int(obj["version"]),
                tasks=tuple(tasks),
                known_qualifiers=tuple(obj.get("known_qualifiers", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed schema definition: {exc}") from exc


@dataclass(frozen=True)
class SpanLabel:
    id: str
    task: str
    label: str
    start: int
    end: int
    fact_types: frozenset[str] = frozenset()
    count_value: Optional[int] = None
    count_qualifier: Optional[str] = None
    date_value: Optional[str] = None

    def extent(self) -> tuple[int, int]:
        return (self.start, self.end)

    def to_json(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "id": self.id,
            "task": self.task,
            "label": self.label,
            "start": self.start,
            "end": self.end,
        }
        if self.fact_types:
            obj["fact_types"] = sorted(self.fact_types)
        if self.count_value is not None:
            obj["count_value"] = self.count_value
        if self.count_qualifier is not None:
            obj["count_qualifier"] = self.count_qualifier
        if self.date_value is not None:
            obj["date_value"] = self.date_value
        return obj

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "SpanLabel":
        try:
            return cls(
                id=str(obj["id"]),
                task=str(obj["task"]),
                label=str(obj["label"]),
                start=int(obj["start"]),
                end=int(obj["end"]),
                fact_types=frozenset(obj.get("fact_types", ())),
                count_value=int(obj["count_value"]) if obj.get("count_value") is not None else None,
                count_qualifier=obj.get("count_qualifier"),
                date_value=obj.get("date_value"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed span record: {exc}") from exc


@dataclass(frozen=True)
class Relation:
    """Directed link from a fact span to one of its attribute spans."""

    source: str
    target: str

    def to_json(self) -> dict[str, str]:
        return {"source": self.source, "target": self.target}

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Relation":
        try:
            return cls(source=str(obj["source"]), target=str(obj["target"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed relation record: {exc}") from exc


@dataclass(frozen=True)
class Annotation:
    """One annotator's complete labeling of one document."""

    document_id: str
    annotator_id: str
    relevance: Optional[str]
    doc_type: Optional[str]
    spans: tuple[SpanLabel, ...] = ()
    relations: tuple[Relation, ...] = ()
    round: str = "initial"
    submitted_at: Optional[str] = None

    def spans_for(self, task: str) -> tuple[SpanLabel, ...]:
        return tuple(s for s in self.spans if s.task == task)

    def span_by_id(self) -> dict[str, SpanLabel]:
        return {s.id: s for s in self.spans}

    def with_round(self, round: str) -> "Annotation":
        return replace(self, round=round)

    def to_json(self) -> dict[str, Any]:
        return {
            "document_id": self.document_id,
            "annotator_id": self.annotator_id,
            "relevance": self.relevance,
            "doc_type": self.doc_type,
            "spans": [s.to_json() for s in self.spans],
            "relations": [r.to_json() for r in self.relations],
            "round": self.round,
            "submitted_at": self.submitted_at,
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Annotation":
        try:
            return cls(
                document_id=str(obj["document_id"]),
                annotator_id=str(obj["annotator_id"]),
                relevance=obj.get("relevance"),
                doc_type=obj.get("doc_type"),
                spans=tuple(SpanLabel.from_json(s) for s in obj.get("spans", ())),
                relations=tuple(Relation.from_json(r) for r in obj.get("relations", ())),
                round=str(obj.get("round", "initial")),
                submitted_at=obj.get("submitted_at"),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed annotation record: {exc}") from exc


def parse_yyyymmdd(value: str) -> Optional[dt.date]:
    """Decode an 8-digit date string; None when malformed or not a real date."""
    if len(value) != 8 or not value.isdigit():
        return None
    try:
        return dt.date(int(value[:4]), int(value[4:6]), int(value[6:8]))
    except ValueError:
        return None
