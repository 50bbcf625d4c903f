"""Deriving binary classification datasets from resolved annotations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

from ..schema import Annotation, resolve_majority

TASK_RELEVANCE = "relevance"
TASK_TYPE = "type_news_vs_summary"

TYPE_POSITIVE = frozenset({"News", "Both"})
TYPE_NEGATIVE = frozenset({"Summary"})


@dataclass(frozen=True)
class LabeledSet:
    """Document ids with binary labels for one two-class problem."""

    task: str
    document_ids: tuple[str, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.document_ids) != len(self.labels):
            raise ValueError("document_ids and labels must align")

    def __len__(self) -> int:
        return len(self.document_ids)

    @property
    def n_positive(self) -> int:
        return sum(self.labels)

    @property
    def n_negative(self) -> int:
        return len(self.labels) - self.n_positive

    def to_json(self) -> dict[str, Any]:
        return {
            "task": self.task,
            "documents": len(self),
            "positive": self.n_positive,
            "negative": self.n_negative,
        }


def build_labeled_sets(annotations: Iterable[Annotation]) -> dict[str, LabeledSet]:
    """Majority-resolve annotations into the two binary problems.

    * relevance — every document whose relevance majority resolves;
      positive = Relevant, negative = Not Relevant or N/A.
    * type_news_vs_summary — only documents whose relevance majority is
      Relevant and whose document-type majority resolves to News, Summary,
      or Both; positive = News or Both, negative = Summary.

    Documents with tied (conflicting) majorities are excluded from the
    respective set.
    """
    groups: dict[str, list[Annotation]] = {}
    for ann in annotations:
        groups.setdefault(ann.document_id, []).append(ann)

    relevance_ids: list[str] = []
    relevance_labels: list[int] = []
    type_ids: list[str] = []
    type_labels: list[int] = []
    for doc_id in sorted(groups):
        anns = groups[doc_id]
        relevance = resolve_majority([a.relevance for a in anns])
        if relevance is None:
            continue
        relevance_ids.append(doc_id)
        relevance_labels.append(1 if relevance == "Relevant" else 0)
        if relevance != "Relevant":
            continue
        doc_type = resolve_majority([a.doc_type or "N/A" for a in anns])
        if doc_type in TYPE_POSITIVE:
            type_ids.append(doc_id)
            type_labels.append(1)
        elif doc_type in TYPE_NEGATIVE:
            type_ids.append(doc_id)
            type_labels.append(0)

    return {
        TASK_RELEVANCE: LabeledSet(
            TASK_RELEVANCE, tuple(relevance_ids), tuple(relevance_labels)
        ),
        TASK_TYPE: LabeledSet(TASK_TYPE, tuple(type_ids), tuple(type_labels)),
    }
