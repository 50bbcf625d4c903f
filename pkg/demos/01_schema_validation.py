#!/usr/bin/env python3
"""Annotation schema and constraint validation, end to end.

Builds one fully annotated news document, shows that it validates
cleanly, then breaks it in three different ways and prints the exact
rule violations the validator reports. Finishes with the crowdsourcing
label round trip.
"""

import datetime as dt

from idmon.schema import (
    Annotation,
    Document,
    Relation,
    SpanLabel,
    crowd_to_expert,
    default_schema,
    expert_to_crowd,
    validate_annotation,
)

schema = default_schema()

print("== The annotation schema ==")
for task in schema.tasks:
    extra = ""
    if task.kind == "classification":
        extra = f"  labels: {', '.join(task.labels)}"
    elif task.name == schema.fact_task:
        extra = f"  ({len(schema.fact_type_labels)} fact types)"
    print(f"  {task.kind:<14} {task.name}{extra}")
print()

doc = Document(
    id="demo-0001",
    url="https://news.example/floods",
    language="en",
    publication_date=dt.date(2019, 3, 4),
    text="Hundreds of people were displaced by floods on Monday near the coast.",
)

annotation = Annotation(
    document_id=doc.id,
    annotator_id="demo-annotator",
    relevance="Relevant",
    doc_type="News",
    spans=(
        SpanLabel(id="f1", task="Fact", label="Relevant fact",
                  start=0, end=36, fact_types=frozenset({"displaced"})),
        SpanLabel(id="q1", task="Quantity", label="Person",
                  start=0, end=8, count_value=300, count_qualifier="about"),
        SpanLabel(id="w1", task="Date", label="Date (stock)",
                  start=47, end=53, date_value="20190304"),
        SpanLabel(id="c1", task="Cause", label="Disaster",
                  start=37, end=43),
    ),
    relations=(
        Relation(source="f1", target="q1"),
        Relation(source="f1", target="w1"),
        Relation(source="f1", target="c1"),
    ),
)

report = validate_annotation(doc, annotation, schema)
print("== A complete annotation ==")
print(f"  spans: {[ (s.task, doc.text[s.start:s.end]) for s in annotation.spans ]}")
print(f"  validates cleanly: {report.clean}")
print()

print("== Three broken variants ==")
broken = {
    "document type left unset": Annotation(
        document_id=doc.id, annotator_id="demo-annotator",
        relevance="Relevant", doc_type=None,
        spans=annotation.spans, relations=annotation.relations,
    ),
    "cause span not linked to any fact": Annotation(
        document_id=doc.id, annotator_id="demo-annotator",
        relevance="Relevant", doc_type="News",
        spans=annotation.spans,
        relations=annotation.relations[:2],  # drop the f1 -> c1 link
    ),
    "impossible calendar date": Annotation(
        document_id=doc.id, annotator_id="demo-annotator",
        relevance="Relevant", doc_type="News",
        spans=annotation.spans[:2] + (
            SpanLabel(id="w1", task="Date", label="Date (stock)",
                      start=47, end=53, date_value="20191332"),
        ),
        relations=annotation.relations[:2] + (Relation(source="f1", target="w1"),),
    ),
}
for story, bad in broken.items():
    report = validate_annotation(doc, bad, schema)
    rules = sorted({v.rule_id for v in report.errors})
    print(f"  {story}:")
    for rule in rules:
        print(f"    error: {rule}")
print()

print("== Crowdsourcing label round trip ==")
for crowd_label in ("Relevant - News", "Relevant - Summary", "Not Relevant", "N/A"):
    relevance, doc_type = crowd_to_expert(crowd_label)
    back = expert_to_crowd(relevance, doc_type)
    print(f"  {crowd_label!r:24} -> relevance={relevance!r}, type={doc_type!r} -> {back!r}")
