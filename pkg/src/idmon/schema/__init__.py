"""Annotation data model, schema definitions, and structural validation."""

from __future__ import annotations

from importlib import resources

from ..jsonio import read_json
from .crowd import (
    CROWD_LABELS,
    CrowdLabel,
    crowd_to_expert,
    expert_to_crowd,
    normalize_crowd_label,
    read_crowd_csv,
    resolve_majority,
)
from .model import (
    DATASETS,
    KIND_CLASSIFICATION,
    KIND_RELATION,
    KIND_SPAN,
    LANGUAGES,
    ROUNDS,
    Annotation,
    Document,
    NestedChoice,
    Relation,
    SchemaDef,
    SpanLabel,
    TaskDef,
    Transcription,
    parse_yyyymmdd,
)
from .validate import (
    RULE_SEVERITIES,
    SEV_ERROR,
    SEV_WARNING,
    ValidationReport,
    Violation,
    validate_annotation,
)


def default_schema() -> SchemaDef:
    """The bundled nine-task expert scheme."""
    with resources.files("idmon.data").joinpath("default_schema.json").open("r", encoding="utf-8") as fh:
        import json

        return SchemaDef.from_json(json.load(fh))


def load_schema(path) -> SchemaDef:
    return SchemaDef.from_json(read_json(path))


def guidelines_text() -> str:
    """The bundled annotator guidelines (markdown)."""
    return (
        resources.files("idmon.data").joinpath("guidelines.md").read_text(encoding="utf-8")
    )


__all__ = [
    "Annotation",
    "CROWD_LABELS",
    "CrowdLabel",
    "DATASETS",
    "Document",
    "KIND_CLASSIFICATION",
    "KIND_RELATION",
    "KIND_SPAN",
    "LANGUAGES",
    "NestedChoice",
    "ROUNDS",
    "Relation",
    "RULE_SEVERITIES",
    "SEV_ERROR",
    "SEV_WARNING",
    "SchemaDef",
    "SpanLabel",
    "TaskDef",
    "Transcription",
    "ValidationReport",
    "Violation",
    "crowd_to_expert",
    "default_schema",
    "expert_to_crowd",
    "guidelines_text",
    "load_schema",
    "normalize_crowd_label",
    "parse_yyyymmdd",
    "read_crowd_csv",
    "resolve_majority",
    "validate_annotation",
]
