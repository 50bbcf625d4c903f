"""Project store: assignment planning, append-only logs, replay,
submission gates, and the annotation interchange format."""

import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idmon.errors import (
    DuplicateSubmissionError,
    NoAssignmentError,
    NotEnoughAnnotatorsError,
    ParseError,
    StorageError,
    UnknownAnnotatorError,
    UnknownDocumentError,
    ValidationFailedError,
)
from idmon.schema import Annotation, default_schema
from idmon.store import (
    Project,
    Store,
    consensus_document_count,
    import_annotations,
)
from oracles import expected_assignment_counts
from conftest import make_doc, make_store, simple_annotation


# --- assignment planning ----------------------------------------------------

def test_assignment_exact_fleet_sizing(tmp_path):
    """200 documents at consensus fraction 0.2 and arity 3: 40 consensus
    documents and 40*3 + 160 = 280 assignments."""
    store = make_store(tmp_path, n_docs=200, annotators=("a1", "a2", "a3", "a4"), fraction=0.2, arity=3)
    assignments = store.assign(seed=11)
    assert len(store.consensus_document_ids()) == 40
    assert len(assignments) == 280

    per_doc = {}
    for a in assignments:
        per_doc.setdefault(a.document_id, set()).add(a.annotator_id)
    sizes = sorted(len(v) for v in per_doc.values())
    assert sizes.count(3) == 40 and sizes.count(1) == 160
    # Consensus documents get distinct annotators.
    assert all(len(v) in (1, 3) for v in per_doc.values())

    loads = [len(store.assignments_for(a)) for a in store.project.annotators]
    assert max(loads) - min(loads) <= 1


def test_assignment_deterministic_in_seed(tmp_path):
    plan1 = make_store(tmp_path / "s1", n_docs=37).assign(seed=5)
    plan2 = make_store(tmp_path / "s2", n_docs=37).assign(seed=5)
    plan3 = make_store(tmp_path / "s3", n_docs=37).assign(seed=6)
    key = lambda plan: [(a.document_id, a.annotator_id) for a in plan]
    assert key(plan1) == key(plan2)
    assert key(plan1) != key(plan3)


@settings(max_examples=100, deadline=None)
@given(
    n_docs=st.integers(min_value=1, max_value=60),
    fraction=st.sampled_from([0.0, 0.1, 0.2, 0.25, 0.5, 1.0]),
    n_annotators=st.integers(min_value=2, max_value=6),
    arity=st.integers(min_value=2, max_value=4),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_assignment_counts_match_counting_oracle(tmp_path_factory, n_docs, fraction, n_annotators, arity, seed):
    arity = min(arity, n_annotators)
    annotators = tuple(f"a{i}" for i in range(n_annotators))
    root = tmp_path_factory.mktemp("plan")
    store = make_store(root, n_docs=n_docs, annotators=annotators, fraction=fraction, arity=arity)
    assignments = store.assign(seed=seed)

    want_consensus, want_total = expected_assignment_counts(n_docs, fraction, arity)
    assert consensus_document_count(n_docs, fraction) == want_consensus
    assert len(store.consensus_document_ids()) == (want_consensus if arity >= 2 else 0)
    assert len(assignments) == want_total

    # Load balance within one document of even.
    loads = [len(store.assignments_for(a)) for a in annotators]
    assert max(loads) - min(loads) <= 1
    # No annotator sees the same document twice.
    assert len({(a.document_id, a.annotator_id) for a in assignments}) == len(assignments)


def test_assign_rejects_thin_annotator_pool(tmp_path):
    store = make_store(tmp_path, n_docs=10, annotators=("a1", "a2"), fraction=0.2, arity=3)
    with pytest.raises(NotEnoughAnnotatorsError):
        store.assign(seed=0)


def test_assign_unknown_document(tmp_path):
    store = make_store(tmp_path, n_docs=3)
    with pytest.raises(UnknownDocumentError):
        store.assign(seed=0, document_ids=["doc-0001", "nope"])


def test_assign_twice_covers_only_new_documents(tmp_path):
    store = make_store(tmp_path, n_docs=10)
    first = store.assign(seed=0)
    assert store.assign(seed=1) == []  # nothing left
    docs2 = [make_doc(i) for i in range(100, 105)]
    store.add_documents(docs2)
    second = store.assign(seed=2)
    assert {a.document_id for a in second} == {d.id for d in docs2}
    assert len(store.assignments) == len(first) + len(second)


# --- store lifecycle --------------------------------------------------------

def test_create_refuses_existing_store(tmp_path):
    store = make_store(tmp_path, n_docs=0)
    with pytest.raises(StorageError):
        Store.create(store.root, store.project, default_schema())


def test_duplicate_and_empty_documents_rejected(tmp_path):
    store = make_store(tmp_path, n_docs=3)
    with pytest.raises(StorageError, match="duplicate"):
        store.add_documents([make_doc(0)])
    with pytest.raises(StorageError, match="empty"):
        store.add_documents([make_doc(50, text=" \n ")])


def test_project_invariants():
    base = dict(id="p", name="P", language="en", schema_version=1,
                annotators=("a1", "a2"), consensus_fraction=0.2,
                annotators_per_consensus_doc=2)
    Project(**base)
    with pytest.raises(ValueError):
        Project(**{**base, "consensus_fraction": 1.5})
    with pytest.raises(ValueError):
        Project(**{**base, "annotators": ("a1", "a1")})
    with pytest.raises(ValueError):
        Project(**{**base, "annotators_per_consensus_doc": 1})
    with pytest.raises(ValueError):
        Project(**{**base, "language": "de"})


def test_reopen_replays_everything(tmp_path):
    store = make_store(tmp_path, n_docs=6, annotators=("a1", "a2"))
    store.assign(seed=3)
    doc = next(d for d in store.documents
               if any(a.document_id == d.id for a in store.assignments_for("a1")))
    store.submit(simple_annotation(doc, "a1"))

    again = Store.open(store.root)
    assert again.project == store.project
    assert again.schema == store.schema
    assert [d.to_json() for d in again.documents] == [d.to_json() for d in store.documents]
    assert [(a.document_id, a.annotator_id, a.status) for a in again.assignments] == \
           [(a.document_id, a.annotator_id, a.status) for a in store.assignments]
    assert again.all_annotations() == store.all_annotations()


# --- submission gates -------------------------------------------------------

def submitted_doc(store, annotator):
    assigned = {a.document_id for a in store.assignments_for(annotator)}
    return next(d for d in store.documents if d.id in assigned)


def test_submit_gates(tmp_path):
    store = make_store(tmp_path, n_docs=8, annotators=("a1", "a2"))
    store.assign(seed=1)
    doc = submitted_doc(store, "a1")

    with pytest.raises(UnknownAnnotatorError):
        store.submit(simple_annotation(doc, "intruder"))
    with pytest.raises(UnknownDocumentError):
        store.submit(simple_annotation(make_doc(999), "a1"))

    other = next(d for d in store.documents
                 if d.id not in {a.document_id for a in store.assignments_for("a1")})
    with pytest.raises(NoAssignmentError):
        store.submit(simple_annotation(other, "a1"))

    store.submit(simple_annotation(doc, "a1"))
    with pytest.raises(DuplicateSubmissionError):
        store.submit(simple_annotation(doc, "a1", doc_type="Summary"))
    # A review round for the same pair is fine.
    store.submit(simple_annotation(doc, "a1", doc_type="Summary", round="review"))


def test_rejected_submit_leaves_log_bytes_unchanged(tmp_path):
    store = make_store(tmp_path, n_docs=4, annotators=("a1", "a2"))
    store.assign(seed=1)
    doc = submitted_doc(store, "a1")
    store.submit(simple_annotation(doc, "a1"))

    log = store.root / "annotations.jsonl"
    before = log.read_bytes()

    bad = Annotation(doc.id, "a2", relevance="Relevant", doc_type=None)
    if not any(a.document_id == doc.id for a in store.assignments_for("a2")):
        store2_doc = submitted_doc(store, "a2")
        bad = Annotation(store2_doc.id, "a2", relevance="Relevant", doc_type=None)
    with pytest.raises(ValidationFailedError) as exc:
        store.submit(bad)
    assert exc.value.report.has_rule("required-task-missing")

    assert log.read_bytes() == before
    assert len(store.all_annotations()) == 1


def test_assignment_status_tracks_rounds(tmp_path):
    store = make_store(tmp_path, n_docs=6, annotators=("a1", "a2"))
    store.assign(seed=2)
    doc = submitted_doc(store, "a1")

    pending = store.next_pending("a1")
    assert pending is not None and pending.status == "pending"
    with pytest.raises(UnknownAnnotatorError):
        store.next_pending("ghost")

    store.submit(simple_annotation(doc, "a1"))
    state = {a.document_id: a.status for a in store.assignments_for("a1")}
    assert state[doc.id] == "submitted"

    store.submit(simple_annotation(doc, "a1", round="review"))
    state = {a.document_id: a.status for a in store.assignments_for("a1")}
    assert state[doc.id] == "reviewed"

    nxt = store.next_pending("a1")
    assert nxt is None or nxt.document_id != doc.id


# --- interchange ------------------------------------------------------------

def test_export_import_round_trip(tmp_path):
    store = make_store(tmp_path, n_docs=6, annotators=("a1", "a2"))
    store.assign(seed=4)
    for annotator in ("a1", "a2"):
        for a in store.assignments_for(annotator):
            doc = store.document(a.document_id)
            if not any(x.annotator_id == annotator and x.document_id == doc.id
                       for x in store.all_annotations()):
                store.submit(simple_annotation(doc, annotator))

    buf = io.StringIO()
    count = store.export(buf)
    assert count == len(store.all_annotations()) > 0

    lines = buf.getvalue().splitlines()
    header = json.loads(lines[0])
    assert header == {"format": "idmon-annotations", "version": 1, "project": "proj"}

    got_header, anns = import_annotations(io.StringIO(buf.getvalue()))
    assert got_header == header
    assert anns == store.all_annotations()


def test_export_filters(tmp_path):
    store = make_store(tmp_path, n_docs=6, annotators=("a1", "a2"))
    store.assign(seed=4)
    doc = submitted_doc(store, "a1")
    store.submit(simple_annotation(doc, "a1", relevance="Not Relevant", doc_type="N/A", fact_types=()))
    doc2 = next(d for d in store.documents
                if d.id != doc.id
                and any(a.document_id == d.id for a in store.assignments_for("a1")))
    store.submit(simple_annotation(doc2, "a1"))

    buf = io.StringIO()
    assert store.export(buf, relevance="Relevant") == 1
    buf = io.StringIO()
    assert store.export(buf, annotator="a2") == 0
    buf = io.StringIO()
    assert store.export(buf, round="review") == 0


def test_import_rejects_non_interchange_input():
    with pytest.raises(ParseError):
        import_annotations(io.StringIO(""))
    with pytest.raises(ParseError):
        import_annotations(io.StringIO('{"format":"something-else"}\n'))
    with pytest.raises(ParseError):
        import_annotations(io.StringIO("not json\n"))


# --- consensus counting -----------------------------------------------------

def test_consensus_document_count_rounds_up():
    assert consensus_document_count(200, 0.2) == 40
    assert consensus_document_count(7, 0.2) == 2    # ceil(1.4)
    assert consensus_document_count(5, 0.2) == 1
    assert consensus_document_count(1, 0.2) == 1
    assert consensus_document_count(10, 0.0) == 0
    assert consensus_document_count(0, 0.5) == 0
    assert consensus_document_count(3, 1.0) == 3
