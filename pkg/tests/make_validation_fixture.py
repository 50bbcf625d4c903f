"""Regenerate the bundled bad-annotations fixture.

Two documents and two annotations carrying exactly five error-severity
violations, one of each kind:

1. required Type label missing           (annotation 1)
2. attribute span not linked to any fact (annotation 2, span s2)
3. malformed 8-digit date                (annotation 2, span s3)
4. relation drawn from a non-fact span   (annotation 2, s2 -> s3)
5. span extent beyond the document text  (annotation 2, span s4)

Run from the repository root:

    python3 tests/make_validation_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "idmon" / "data" / "fixtures"

TEXT_1 = (
    "Flooding in the coastal province forced hundreds of families from "
    "their homes over the weekend, the local disaster agency said."
)
TEXT_2 = (
    "A landslide buried parts of the mountain village on Tuesday. "
    "Rescue teams said dozens of residents were displaced and several "
    "roads remained closed."
)


def extent(text: str, phrase: str) -> tuple[int, int]:
    start = text.index(phrase)
    return start, start + len(phrase)


def main() -> None:
    documents = [
        {
            "id": "fx-doc-1",
            "url": "https://news.example/fx-doc-1",
            "language": "en",
            "publication_date": "2019-06-01",
            "text": TEXT_1,
            "themes": ["DISPLACED"],
            "dataset": "custom",
        },
        {
            "id": "fx-doc-2",
            "url": "https://news.example/fx-doc-2",
            "language": "en",
            "publication_date": "2019-06-02",
            "text": TEXT_2,
            "themes": ["NATURAL_DISASTER"],
            "dataset": "custom",
        },
    ]

    f1_start, f1_end = extent(TEXT_1, "forced hundreds of families from their homes")
    missing_type = {
        "document_id": "fx-doc-1",
        "annotator_id": "rev-a",
        "relevance": "Relevant",
        "doc_type": None,
        "spans": [
            {
                "id": "s1",
                "task": "Fact",
                "label": "Relevant fact",
                "start": f1_start,
                "end": f1_end,
                "fact_types": ["forced to flee"],
            }
        ],
        "relations": [],
        "round": "initial",
    }

    f2_start, f2_end = extent(TEXT_2, "dozens of residents were displaced")
    c_start, c_end = extent(TEXT_2, "landslide")
    d_start, d_end = extent(TEXT_2, "Tuesday")
    broken_spans = {
        "document_id": "fx-doc-2",
        "annotator_id": "rev-b",
        "relevance": "Relevant",
        "doc_type": "News",
        "spans": [
            {
                "id": "s1",
                "task": "Fact",
                "label": "Relevant fact",
                "start": f2_start,
                "end": f2_end,
                "fact_types": ["displaced"],
            },
            # never appears as a relation target -> orphan
            {"id": "s2", "task": "Cause", "label": "Disaster", "start": c_start, "end": c_end},
            # month 13 is not a calendar date
            {
                "id": "s3",
                "task": "Date",
                "label": "Start Date (flow)",
                "start": d_start,
                "end": d_end,
                "date_value": "20191332",
            },
            # end offset far beyond the text
            {
                "id": "s4",
                "task": "Fact",
                "label": "Relevant fact",
                "start": 30,
                "end": 10000,
                "fact_types": ["evacuated"],
            },
        ],
        "relations": [
            {"source": "s1", "target": "s3"},
            # a Cause span may not anchor a relation
            {"source": "s2", "target": "s3"},
        ],
        "round": "initial",
    }

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    with open(OUT_DIR / "validation_documents.jsonl", "w", encoding="utf-8") as fh:
        for doc in documents:
            fh.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")
    with open(OUT_DIR / "bad_annotations.jsonl", "w", encoding="utf-8") as fh:
        for ann in (missing_type, broken_spans):
            fh.write(json.dumps(ann, sort_keys=True, ensure_ascii=False) + "\n")
    print("wrote", OUT_DIR / "bad_annotations.jsonl")


if __name__ == "__main__":
    main()
