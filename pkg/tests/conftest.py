"""Shared test fixtures and the acceptance-criteria summary printer."""

from __future__ import annotations

import datetime as dt
from pathlib import Path

import pytest

from idmon.schema import Annotation, Document, SpanLabel
from idmon.store import Project, Store

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "idmon" / "data"


def data_fixture(name: str) -> Path:
    """Path of a bundled fixture file."""
    return DATA_DIR / "fixtures" / name


def make_doc(i: int, text: str = "", *, year: int = 2019) -> Document:
    return Document(
        id=f"doc-{i:04d}",
        url=f"https://news.example/{i}",
        language="en",
        publication_date=dt.date(year, (i % 12) + 1, (i % 28) + 1),
        text=text or f"Article {i}. Hundreds of people were displaced by floods.",
        themes=frozenset({"DISPLACED"}),
        dataset="custom",
    )


def make_store(
    tmp_path: Path,
    *,
    n_docs: int = 10,
    annotators: tuple[str, ...] = ("a1", "a2", "a3"),
    fraction: float = 0.2,
    arity: int = 2,
    texts: dict[int, str] | None = None,
) -> Store:
    from idmon.schema import default_schema

    project = Project(
        id="proj",
        name="Test project",
        language="en",
        schema_version=1,
        annotators=annotators,
        consensus_fraction=fraction,
        annotators_per_consensus_doc=arity,
    )
    store = Store.create(tmp_path / "store", project, default_schema())
    if n_docs:
        docs = [make_doc(i, (texts or {}).get(i, "")) for i in range(n_docs)]
        store.add_documents(docs)
    return store


def simple_annotation(
    doc: Document,
    annotator: str,
    *,
    relevance: str = "Relevant",
    doc_type: str = "News",
    fact_types: tuple[str, ...] = ("displaced",),
    round: str = "initial",
) -> Annotation:
    """A minimal valid annotation; Relevant ones carry one fact span."""
    spans: tuple[SpanLabel, ...] = ()
    if relevance == "Relevant":
        start = doc.text.index("displaced") if "displaced" in doc.text else 0
        spans = (
            SpanLabel(
                id="s1",
                task="Fact",
                label="Relevant fact",
                start=start,
                end=min(start + 9, len(doc.text)),
                fact_types=frozenset(fact_types),
            ),
        )
    return Annotation(
        document_id=doc.id,
        annotator_id=annotator,
        relevance=relevance,
        doc_type=doc_type,
        spans=spans,
        round=round,
    )


def make_synthetic_corpus(
    n: int,
    seed: int,
    *,
    task: str = "relevance",
    shuffled: bool = False,
):
    """A two-class text corpus: per-class marker words over shared filler.

    With ``shuffled`` the labels are re-dealt at random, severing any link
    between text content and label, so a sound evaluation should score
    near chance on it.
    """
    import random as _random

    from idmon.mlpipe import LabeledSet

    rng = _random.Random(seed)
    pos_words = ["displaced", "evacuated", "shelter", "flee", "refugees"]
    neg_words = ["football", "budget", "election", "concert", "recipe"]
    shared = ["the", "people", "in", "town", "on", "monday", "officials",
              "said", "report", "local", "county", "after"]
    texts: dict[str, str] = {}
    ids: list[str] = []
    labels: list[int] = []
    for i in range(n):
        label = i % 2
        words = [rng.choice(shared) for _ in range(30)]
        theme = pos_words if label == 1 else neg_words
        for _ in range(6):
            words.insert(rng.randrange(len(words) + 1), rng.choice(theme))
        doc_id = f"syn-{i:04d}"
        texts[doc_id] = " ".join(words)
        ids.append(doc_id)
        labels.append(label)
    if shuffled:
        rng.shuffle(labels)
    return texts, LabeledSet(task, tuple(ids), tuple(labels))


# -- acceptance summary --------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "setup" and report.skipped:
        reason = ""
        if isinstance(report.longrepr, tuple):
            reason = report.longrepr[-1].removeprefix("Skipped: ")
        _ACCEPTANCE[report.nodeid] = ("SKIPPED", reason)
    elif report.when == "setup" and report.failed:
        _ACCEPTANCE[report.nodeid] = ("FAIL", "setup error")
    elif report.when == "call":
        if report.skipped:
            reason = ""
            if isinstance(report.longrepr, tuple):
                reason = report.longrepr[-1].removeprefix("Skipped: ")
            _ACCEPTANCE[report.nodeid] = ("SKIPPED", reason)
        else:
            _ACCEPTANCE[report.nodeid] = ("PASS" if report.passed else "FAIL", "")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE):
        status, reason = _ACCEPTANCE[nodeid]
        name = nodeid.split("::")[-1].removeprefix("test_")
        line = f"{status:8s} {name}"
        if reason:
            line += f"  [{reason}]"
        terminalreporter.write_line(line)
