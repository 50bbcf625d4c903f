#!/usr/bin/env python3
"""A complete annotation campaign against the append-only store.

Creates a project, loads a small corpus, assigns documents (a seeded
fraction goes to several annotators for consensus, the rest to one),
then walks one annotator's queue: a clean submission, a rejected one,
a duplicate, and a review-round correction. Ends with the export
stream other tools consume.
"""

import datetime as dt
import io
import tempfile
from pathlib import Path

from idmon.schema import Annotation, Document, SpanLabel, default_schema
from idmon.store import Project, Store
from idmon.errors import DuplicateSubmissionError, ValidationFailedError

workdir = Path(tempfile.mkdtemp(prefix="store-demo-"))

project = Project(
    id="flood-watch",
    name="Flood displacement watch",
    language="en",
    schema_version=1,
    annotators=("ana", "ben", "cho"),
    consensus_fraction=1 / 3,
    annotators_per_consensus_doc=2,
)
store = Store.create(workdir / "store", project, default_schema())

docs = [
    Document(
        id=f"doc-{i:03d}",
        url=f"https://news.example/{i}",
        language="en",
        publication_date=dt.date(2019, 3, i + 1),
        text=f"Report {i}: hundreds of people were displaced by floods.",
    )
    for i in range(6)
]
store.add_documents(docs)

assignments = store.assign(seed=42)
print("== Assignment ==")
print(f"  {len(docs)} documents, consensus fraction 1/3, 2 annotators per consensus doc")
print(f"  consensus documents: {sorted(store.consensus_document_ids())}")
print(f"  total assignments:   {len(assignments)}")
for who in project.annotators:
    queue = [a.document_id for a in store.assignments_for(who)]
    print(f"  {who}: {queue}")
print()


def annotate(doc_id, annotator, *, doc_type="News", round="initial"):
    doc = store.document(doc_id)
    start = doc.text.index("displaced")
    return Annotation(
        document_id=doc_id,
        annotator_id=annotator,
        relevance="Relevant",
        doc_type=doc_type,
        spans=(SpanLabel(id="f1", task="Fact", label="Relevant fact",
                         start=start, end=start + 9,
                         fact_types=frozenset({"displaced"})),),
        round=round,
    )


first = store.next_pending("ana")
print("== Ana works her queue ==")
print(f"  next pending: {first.document_id} (status {first.status})")
store.submit(annotate(first.document_id, "ana"))
print(f"  submitted; status now: {store.assignments_for('ana')[0].status}")

second = store.next_pending("ana")
try:
    bad = annotate(second.document_id, "ana", doc_type=None)
    store.submit(bad)
except ValidationFailedError as exc:
    rules = sorted({v.rule_id for v in exc.report.errors})
    print(f"  rejected submission for {second.document_id}: {rules}")
    print("  (the rejected attempt left the log untouched)")

try:
    store.submit(annotate(first.document_id, "ana"))
except DuplicateSubmissionError as exc:
    print(f"  duplicate refused: {exc}")
print()

print("== Review round supersedes the initial verdict ==")
store.submit(annotate(first.document_id, "ana", doc_type="Summary", round="review"))
current = store.annotations_for(first.document_id)
log = store.all_annotations()
print(f"  current view shows: {[(a.round, a.doc_type) for a in current]}")
print(f"  full log keeps both: {[(a.round, a.doc_type) for a in log if a.document_id == first.document_id]}")
print()

print("== Export stream ==")
buffer = io.StringIO()
n = store.export(buffer)
lines = buffer.getvalue().splitlines()
print(f"  {n} annotations exported")
print(f"  header: {lines[0]}")
print(f"  first record: {lines[1][:76]}...")
