"""Crowdsourced single-task labels and their mapping to the expert scheme.

The crowd scheme collapses the two required document-level verdicts into
one five-way choice; ``crowd_to_expert`` splits it back apart and
``expert_to_crowd`` is its inverse on the five canonical labels.
"""

from __future__ import annotations

import csv
import io
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ..errors import ParseError, UnknownLabelError

CROWD_RELEVANT_NEWS = "Relevant - News"
CROWD_RELEVANT_SUMMARY = "Relevant - Summary"
CROWD_RELEVANT_BOTH = "Relevant - Both"
CROWD_NOT_RELEVANT = "Not Relevant"
CROWD_NA = "N/A"

CROWD_LABELS = (
    CROWD_RELEVANT_NEWS,
    CROWD_RELEVANT_SUMMARY,
    CROWD_RELEVANT_BOTH,
    CROWD_NOT_RELEVANT,
    CROWD_NA,
)

_TO_EXPERT = {
    CROWD_RELEVANT_NEWS: ("Relevant", "News"),
    CROWD_RELEVANT_SUMMARY: ("Relevant", "Summary"),
    CROWD_RELEVANT_BOTH: ("Relevant", "Both"),
    CROWD_NOT_RELEVANT: ("Not Relevant", None),
    CROWD_NA: ("N/A", None),
}

# Dash variants and spacing differ across export tools; the separator is
# normalized before lookup, the label words are not.
_DASH_SEP = re.compile(r"\s*[-‐‑‒–—]+\s*")


@dataclass(frozen=True)
class CrowdLabel:
    document_id: str
    worker_id: str
    label: str


def normalize_crowd_label(raw: str) -> str:
    """Canonicalize the separator; raises UnknownLabelError outside the closed set."""
    cleaned = _DASH_SEP.sub(" - ", " ".join(raw.split()))
    if cleaned not in CROWD_LABELS:
        raise UnknownLabelError(f"{raw!r} is not a crowd label")
    return cleaned


def crowd_to_expert(label: str) -> tuple[str, Optional[str]]:
    """Split a crowd verdict into the (relevance, type) pair it merges."""
    return _TO_EXPERT[normalize_crowd_label(label)]


def expert_to_crowd(relevance: str, doc_type: Optional[str]) -> str:
    """Merge an expert verdict pair back into the single crowd label."""
    for crowd, (rel, typ) in _TO_EXPERT.items():
        if rel == relevance and (typ == doc_type or (typ is None and doc_type is None)):
            return crowd
    raise UnknownLabelError(f"({relevance!r}, {doc_type!r}) has no crowd equivalent")


def read_crowd_csv(source: str | Path | io.TextIOBase) -> list[CrowdLabel]:
    """Parse `document_id,worker_id,label` rows; one label per (document, worker)."""
    if isinstance(source, (str, Path)):
        fh: io.TextIOBase = open(source, "r", encoding="utf-8", newline="")
        close = True
    else:
        fh, close = source, False
    try:
        reader = csv.DictReader(fh)
        expected = ["document_id", "worker_id", "label"]
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
            raise ParseError(f"crowd CSV header must be {','.join(expected)}")
        out: list[CrowdLabel] = []
        seen: set[tuple[str, str]] = set()
        for i, row in enumerate(reader, start=2):
            key = (row["document_id"], row["worker_id"])
            if key in seen:
                raise ParseError(f"line {i}: duplicate label for (document, worker) {key}")
            seen.add(key)
            out.append(
                CrowdLabel(
                    document_id=row["document_id"],
                    worker_id=row["worker_id"],
                    label=normalize_crowd_label(row["label"]),
                )
            )
        return out
    finally:
        if close:
            fh.close()


def resolve_majority(labels: Sequence[str]) -> Optional[str]:
    """Strict plurality winner, or None on a conflict.

    Decided(x) iff x occurs strictly more often than every other label;
    permutation-invariant by construction.
    """
    if not labels:
        raise ValueError("majority of an empty label list")
    counts = Counter(labels).most_common()
    if len(counts) > 1 and counts[0][1] == counts[1][1]:
        return None
    return counts[0][0]
