"""Append-only project store.

A project lives in one directory of JSONL logs:

    project.json        project settings (written once at creation)
    documents.jsonl     one document per line
    assignments.jsonl   one (document, annotator) pair per line
    annotations.jsonl   one submitted annotation per line, append-only

Nothing in the logs is ever rewritten; the current state (assignment
status, which annotation is current for a pair) is a deterministic
function of the log, rebuilt into an in-memory index on open. Mutations
are serialized through a single in-process writer lock; the HTTP layer
funnels all submissions through one Store instance.
"""

from __future__ import annotations

import json
import math
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Iterable, Mapping, Optional

from .errors import (
    DuplicateSubmissionError,
    NoAssignmentError,
    NotEnoughAnnotatorsError,
    ParseError,
    StorageError,
    UnknownAnnotatorError,
    UnknownDocumentError,
    ValidationFailedError,
)
from .jsonio import append_jsonl, dumps, read_json, read_jsonl, write_json, write_jsonl
from .schema import Annotation, Document, SchemaDef, validate_annotation
from .schema.model import LANGUAGES

STATUS_PENDING = "pending"
STATUS_SUBMITTED = "submitted"
STATUS_REVIEWED = "reviewed"

EXPORT_FORMAT = "idmon-annotations"
EXPORT_VERSION = 1

PROJECT_FILE = "project.json"
DOCUMENTS_FILE = "documents.jsonl"
ASSIGNMENTS_FILE = "assignments.jsonl"
ANNOTATIONS_FILE = "annotations.jsonl"


@dataclass(frozen=True)
class Project:
    """Settings of one annotation project."""

    id: str
    name: str
    language: str
    schema_version: int
    annotators: tuple[str, ...]
    consensus_fraction: float
    annotators_per_consensus_doc: int

    def __post_init__(self):
        if self.language not in LANGUAGES:
            raise ValueError(f"language must be one of {', '.join(LANGUAGES)}")
        if not 0.0 <= self.consensus_fraction <= 1.0:
            raise ValueError("consensus_fraction must lie in [0, 1]")
        if self.consensus_fraction > 0 and self.annotators_per_consensus_doc < 2:
            raise ValueError(
                "annotators_per_consensus_doc must be >= 2 when consensus_fraction > 0"
            )
        if len(set(self.annotators)) != len(self.annotators):
            raise ValueError("annotator ids must be unique")

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "name": self.name,
            "language": self.language,
            "schema_version": self.schema_version,
            "annotators": list(self.annotators),
            "consensus_fraction": self.consensus_fraction,
            "annotators_per_consensus_doc": self.annotators_per_consensus_doc,
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Project":
        try:
            return cls(
                id=str(obj["id"]),
                name=str(obj["name"]),
                language=str(obj.get("language", "en")),
                schema_version=int(obj.get("schema_version", 1)),
                annotators=tuple(obj["annotators"]),
                consensus_fraction=float(obj["consensus_fraction"]),
                annotators_per_consensus_doc=int(obj["annotators_per_consensus_doc"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed project record: {exc}") from exc


@dataclass
class Assignment:
    """One (document, annotator) work item; status is derived from the logs."""

    document_id: str
    annotator_id: str
    status: str = STATUS_PENDING

    def to_json(self) -> dict[str, Any]:
        return {
            "document_id": self.document_id,
            "annotator_id": self.annotator_id,
            "status": self.status,
        }


def consensus_document_count(n_documents: int, fraction: float) -> int:
    """⌈fraction × N⌉ with exact decimal arithmetic.

    Binary floats make naive ceil unreliable (0.2 × 200 is slightly above
    40 in float, so math.ceil would answer 41); routing the fraction
    through its decimal string keeps the arithmetic exact.
    """
    if n_documents < 0:
        raise ValueError("document count must be non-negative")
    return math.ceil(Fraction(str(fraction)) * n_documents)


class Store:
    """Single-writer store over one project directory."""

    def __init__(self, root: Path, project: Project, schema: SchemaDef):
        self.root = Path(root)
        self.project = project
        self.schema = schema
        self._lock = threading.RLock()
        self._documents: dict[str, Document] = {}
        self._doc_order: list[str] = []
        self._assignments: dict[tuple[str, str], Assignment] = {}
        self._assignment_order: list[tuple[str, str]] = []
        # (document, annotator, round) -> Annotation; append order retained.
        self._annotations: list[Annotation] = []

    # -- lifecycle ---------------------------------------------------------

    @classmethod
    def create(cls, root: str | Path, project: Project, schema: SchemaDef) -> "Store":
        root = Path(root)
        if (root / PROJECT_FILE).exists():
            raise StorageError(f"{root} already contains a project")
        root.mkdir(parents=True, exist_ok=True)
        write_json(root / PROJECT_FILE, {"project": project.to_json(), "schema": schema.to_json()})
        for name in (DOCUMENTS_FILE, ASSIGNMENTS_FILE, ANNOTATIONS_FILE):
            (root / name).touch()
        return cls(root, project, schema)

    @classmethod
    def open(cls, root: str | Path) -> "Store":
        root = Path(root)
        meta_path = root / PROJECT_FILE
        if not meta_path.exists():
            raise StorageError(f"no project found under {root}")
        meta = read_json(meta_path)
        project = Project.from_json(meta["project"])
        schema = SchemaDef.from_json(meta["schema"])
        store = cls(root, project, schema)
        store._replay()
        return store

    def _replay(self) -> None:
        for obj in read_jsonl(self.root / DOCUMENTS_FILE):
            doc = Document.from_json(obj)
            self._documents[doc.id] = doc
            self._doc_order.append(doc.id)
        for obj in read_jsonl(self.root / ASSIGNMENTS_FILE):
            key = (str(obj["document_id"]), str(obj["annotator_id"]))
            self._assignments[key] = Assignment(*key)
            self._assignment_order.append(key)
        for obj in read_jsonl(self.root / ANNOTATIONS_FILE):
            self._annotations.append(Annotation.from_json(obj))
        self._refresh_statuses()

    def _refresh_statuses(self) -> None:
        rounds: dict[tuple[str, str], set[str]] = {}
        for ann in self._annotations:
            rounds.setdefault((ann.document_id, ann.annotator_id), set()).add(ann.round)
        for key, assignment in self._assignments.items():
            seen = rounds.get(key, set())
            if "review" in seen:
                assignment.status = STATUS_REVIEWED
            elif "initial" in seen:
                assignment.status = STATUS_SUBMITTED
            else:
                assignment.status = STATUS_PENDING

    # -- documents ---------------------------------------------------------

    def add_documents(self, docs: Iterable[Document]) -> int:
        with self._lock:
            added = []
            for doc in docs:
                if not doc.text.strip():
                    raise StorageError(f"document {doc.id} has empty text")
                if doc.id in self._documents or any(d.id == doc.id for d in added):
                    raise StorageError(f"duplicate document id {doc.id}")
                added.append(doc)
            append_jsonl(self.root / DOCUMENTS_FILE, (d.to_json() for d in added))
            for doc in added:
                self._documents[doc.id] = doc
                self._doc_order.append(doc.id)
            return len(added)

    def document(self, document_id: str) -> Document:
        try:
            return self._documents[document_id]
        except KeyError:
            raise UnknownDocumentError(f"unknown document {document_id}") from None

    @property
    def documents(self) -> list[Document]:
        return [self._documents[i] for i in self._doc_order]

    # -- assignment --------------------------------------------------------

    def assign(self, seed: int, document_ids: Optional[Iterable[str]] = None) -> list[Assignment]:
        """Plan work for a document set (default: all unassigned documents).

        A seeded-uniform ⌈consensus_fraction × N⌉ subset goes to
        ``annotators_per_consensus_doc`` distinct annotators each; every
        other document goes to exactly one. Annotator load stays within ±1
        because a single round-robin pointer walks a seeded rotation of
        the annotator list across all hand-outs.
        """
        with self._lock:
            project = self.project
            if not project.annotators:
                raise NotEnoughAnnotatorsError("project has no annotators")
            if document_ids is None:
                assigned_docs = {d for d, _ in self._assignments}
                ids = [i for i in self._doc_order if i not in assigned_docs]
            else:
                ids = list(document_ids)
                for i in ids:
                    if i not in self._documents:
                        raise UnknownDocumentError(f"unknown document {i}")
            n = len(ids)
            arity = project.annotators_per_consensus_doc
            n_consensus = consensus_document_count(n, project.consensus_fraction)
            if n_consensus > 0 and len(project.annotators) < arity:
                raise NotEnoughAnnotatorsError(
                    f"consensus arity {arity} needs at least {arity} annotators, "
                    f"project has {len(project.annotators)}"
                )
            rng = random.Random(seed)
            shuffled = sorted(ids)
            rng.shuffle(shuffled)
            consensus_ids = set(shuffled[:n_consensus])
            rotation = sorted(project.annotators)
            rng.shuffle(rotation)
            pointer = 0
            new: list[Assignment] = []
            new_keys: set[tuple[str, str]] = set()
            for doc_id in shuffled:
                want = arity if doc_id in consensus_ids else 1
                for _ in range(want):
                    annotator = rotation[pointer % len(rotation)]
                    pointer += 1
                    key = (doc_id, annotator)
                    if key in self._assignments or key in new_keys:
                        raise StorageError(f"document {doc_id} already assigned to {annotator}")
                    new_keys.add(key)
                    new.append(Assignment(doc_id, annotator))
            append_jsonl(
                self.root / ASSIGNMENTS_FILE,
                ({"document_id": a.document_id, "annotator_id": a.annotator_id} for a in new),
            )
            for a in new:
                key = (a.document_id, a.annotator_id)
                self._assignments[key] = a
                self._assignment_order.append(key)
            return list(new)

    @property
    def assignments(self) -> list[Assignment]:
        return [self._assignments[k] for k in self._assignment_order]

    def assignments_for(self, annotator_id: str) -> list[Assignment]:
        return [a for a in self.assignments if a.annotator_id == annotator_id]

    def next_pending(self, annotator_id: str) -> Optional[Assignment]:
        """Oldest pending assignment for the annotator, by assignment order."""
        if annotator_id not in self.project.annotators:
            raise UnknownAnnotatorError(f"unknown annotator {annotator_id}")
        for key in self._assignment_order:
            a = self._assignments[key]
            if a.annotator_id == annotator_id and a.status == STATUS_PENDING:
                return a
        return None

    def consensus_document_ids(self) -> list[str]:
        """Documents holding at least annotators_per_consensus_doc assignments."""
        counts: dict[str, int] = {}
        for doc_id, _ in self._assignment_order:
            counts[doc_id] = counts.get(doc_id, 0) + 1
        arity = max(2, self.project.annotators_per_consensus_doc)
        return [i for i in self._doc_order if counts.get(i, 0) >= arity]

    # -- submission --------------------------------------------------------

    def submit(self, annotation: Annotation) -> str:
        """Validate and persist one annotation; returns the stored id.

        Errors leave the logs untouched byte for byte. A review-round
        submission supersedes the initial one in the current view while
        both stay in the log; review submissions pass the same validation
        gate as initial ones.
        """
        with self._lock:
            doc = self.document(annotation.document_id)
            if annotation.annotator_id not in self.project.annotators:
                raise UnknownAnnotatorError(f"unknown annotator {annotation.annotator_id}")
            key = (annotation.document_id, annotation.annotator_id)
            if key not in self._assignments:
                raise NoAssignmentError(
                    f"annotator {annotation.annotator_id} is not assigned "
                    f"document {annotation.document_id}"
                )
            for prior in self._annotations:
                if (
                    prior.document_id == annotation.document_id
                    and prior.annotator_id == annotation.annotator_id
                    and prior.round == annotation.round
                ):
                    raise DuplicateSubmissionError(
                        f"{annotation.annotator_id} already submitted a "
                        f"{annotation.round}-round annotation for {annotation.document_id}"
                    )
            report = validate_annotation(doc, annotation, self.schema)
            if not report.ok:
                raise ValidationFailedError(
                    f"annotation for {annotation.document_id} failed validation", report
                )
            stored_id = f"ann-{len(self._annotations):06d}"
            append_jsonl(self.root / ANNOTATIONS_FILE, [annotation.to_json()])
            self._annotations.append(annotation)
            self._refresh_statuses()
            return stored_id

    # -- annotation views ----------------------------------------------------

    def all_annotations(self, round: Optional[str] = None) -> list[Annotation]:
        """Every logged annotation, in submission order."""
        if round is None:
            return list(self._annotations)
        return [a for a in self._annotations if a.round == round]

    def current_annotations(self) -> list[Annotation]:
        """Current view: the review-round annotation where one exists,
        otherwise the initial one, per (document, annotator)."""
        latest: dict[tuple[str, str], Annotation] = {}
        for ann in self._annotations:
            key = (ann.document_id, ann.annotator_id)
            if key not in latest or ann.round == "review":
                latest[key] = ann
        return [latest[k] for k in sorted(latest)]

    def annotations_for(self, document_id: str, round: Optional[str] = None) -> list[Annotation]:
        if round is not None:
            return [a for a in self._annotations
                    if a.document_id == document_id and a.round == round]
        return [a for a in self.current_annotations() if a.document_id == document_id]

    # -- interchange -------------------------------------------------------

    def export(
        self,
        stream: IO[str],
        round: Optional[str] = None,
        annotator: Optional[str] = None,
        relevance: Optional[str] = None,
    ) -> int:
        """Write the JSONL interchange: a header line, then one annotation
        per line (submission order). Filters narrow by round, annotator, or
        relevance verdict. Returns the number of annotations written."""
        header = {
            "format": EXPORT_FORMAT,
            "version": EXPORT_VERSION,
            "project": self.project.id,
        }
        stream.write(dumps(header) + "\n")
        count = 0
        for ann in self._annotations:
            if round is not None and ann.round != round:
                continue
            if annotator is not None and ann.annotator_id != annotator:
                continue
            if relevance is not None and ann.relevance != relevance:
                continue
            stream.write(dumps(ann.to_json()) + "\n")
            count += 1
        return count


def load_documents(path: str | Path) -> list[Document]:
    """Read a JSONL corpus file (one document object per line)."""
    return [Document.from_json(obj) for obj in read_jsonl(path)]


def write_documents(path: str | Path, docs: Iterable[Document]) -> int:
    """Write a JSONL corpus file; returns the number of documents."""
    return write_jsonl(path, (d.to_json() for d in docs))


def import_annotations(stream: IO[str] | Iterable[str]) -> tuple[dict[str, Any], list[Annotation]]:
    """Read an interchange file written by Store.export; returns
    (header, annotations). The round trip is lossless."""
    lines = iter(stream)
    try:
        first = next(lines)
    except StopIteration:
        raise ParseError("empty interchange file: missing header line") from None
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed interchange header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != EXPORT_FORMAT:
        raise ParseError("not an annotation interchange file")
    annotations = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed interchange line: {exc}") from exc
        annotations.append(Annotation.from_json(obj))
    return header, annotations
