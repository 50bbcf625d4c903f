"""Pairing spans between two annotators of the same document.

Two spans can be matched either because their extents overlap or, failing
that, because their texts are similar enough — annotators often mark the
same information repeated at different points in a document. Matching is
greedy one-to-one: overlap candidates first (largest intersection wins),
then similarity candidates (highest score wins); ties fall to the pair
with the lower start offset. Spans matching under neither criterion stay
unpaired and are discarded by merged-mode agreement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from ..schema import Annotation, Document, SpanLabel

BASIS_OVERLAP = "overlap"
BASIS_SIMILARITY = "similarity"

DEFAULT_SIMILARITY_THRESHOLD = 0.8
SIMILARITY_METRIC_NAME = "token-set-jaccard"

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class AlignmentPair:
    span_a: SpanLabel
    span_b: SpanLabel
    basis: str  # overlap | similarity
    similarity_score: Optional[float] = None


def span_overlap(a: SpanLabel, b: SpanLabel) -> bool:
    """True iff the half-open extents intersect. Both spans must come from
    the same document for the comparison to be meaningful; alignment
    enforces that precondition."""
    return max(a.start, b.start) < min(a.end, b.end)


def text_similarity(a: str, b: str) -> float:
    """Token-set Jaccard after lowercasing and punctuation stripping.

    Two empty token sets are identical (1.0); one empty set is disjoint
    from any non-empty one (0.0).
    """
    ta = set(_TOKEN.findall(a.lower()))
    tb = set(_TOKEN.findall(b.lower()))
    if not ta and not tb:
        return 1.0
    if not ta or not tb:
        return 0.0
    return len(ta & tb) / len(ta | tb)


def _span_sort_key(span: SpanLabel) -> tuple:
    return (span.start, span.end, span.label, span.id)


def _pair_key(a: SpanLabel, b: SpanLabel) -> tuple:
    # Orientation-independent tiebreak: compare the two spans' identity
    # tuples as an unordered pair so align(a, b) mirrors align(b, a).
    ka, kb = _span_sort_key(a), _span_sort_key(b)
    return (min(ka, kb), max(ka, kb))


def align_spans(
    document: Document,
    ann_a: Annotation,
    ann_b: Annotation,
    task: str,
    threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
    similarity: Callable[[str, str], float] = text_similarity,
) -> list[AlignmentPair]:
    """Two-step greedy one-to-one matching of one task's spans."""
    if ann_a.document_id != ann_b.document_id or ann_a.document_id != document.id:
        raise ValueError(
            "span alignment compares two annotations of the same document; got "
            f"{document.id!r}, {ann_a.document_id!r}, {ann_b.document_id!r}"
        )
    spans_a = sorted(ann_a.spans_for(task), key=_span_sort_key)
    spans_b = sorted(ann_b.spans_for(task), key=_span_sort_key)

    used_a: set[int] = set()
    used_b: set[int] = set()
    pairs: list[AlignmentPair] = []

    overlap_candidates = []
    for i, a in enumerate(spans_a):
        for j, b in enumerate(spans_b):
            if span_overlap(a, b):
                intersection = min(a.end, b.end) - max(a.start, b.start)
                overlap_candidates.append((-intersection, _pair_key(a, b), i, j))
    overlap_candidates.sort(key=lambda c: (c[0], c[1]))
    for _, _, i, j in overlap_candidates:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        pairs.append(AlignmentPair(spans_a[i], spans_b[j], BASIS_OVERLAP))

    similarity_candidates = []
    for i, a in enumerate(spans_a):
        if i in used_a:
            continue
        for j, b in enumerate(spans_b):
            if j in used_b:
                continue
            score = similarity(document.text[a.start:a.end], document.text[b.start:b.end])
            if score >= threshold:
                similarity_candidates.append((-score, _pair_key(a, b), i, j))
    similarity_candidates.sort(key=lambda c: (c[0], c[1]))
    for neg_score, _, i, j in similarity_candidates:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        pairs.append(
            AlignmentPair(spans_a[i], spans_b[j], BASIS_SIMILARITY, similarity_score=-neg_score)
        )

    pairs.sort(key=lambda p: _pair_key(p.span_a, p.span_b))
    return pairs
