"""Span alignment: overlap-first greedy matching with a text-similarity
fallback for repeated mentions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idmon.agreement.alignment import (
    AlignmentPair,
    align_spans,
    span_overlap,
    text_similarity,
)
from idmon.schema import Annotation, SpanLabel
from conftest import make_doc
import oracles

TEXT = (
    "Hundreds of people were displaced by floods on Monday. "  # 0..55
    "Emergency shelters opened across the county overnight. "  # 56..110
    "Officials said hundreds of people were displaced."  # 111..160
)
DOC = make_doc(1, TEXT)


def fact(span_id, start, end, types=("displaced",)):
    return SpanLabel(
        id=span_id, task="Fact", label="Relevant fact",
        start=start, end=end, fact_types=frozenset(types),
    )


def ann(annotator, *spans):
    return Annotation(DOC.id, annotator, "Relevant", "News", spans=tuple(spans))


def test_span_overlap_half_open():
    assert span_overlap(fact("a", 0, 10), fact("b", 9, 20))
    assert not span_overlap(fact("a", 0, 10), fact("b", 10, 20))  # touching
    assert span_overlap(fact("a", 0, 30), fact("b", 5, 6))  # containment


def test_text_similarity_token_jaccard():
    assert text_similarity("Hundreds displaced", "hundreds DISPLACED!") == 1.0
    assert text_similarity("a b c d", "a b c e") == pytest.approx(3 / 5)
    assert text_similarity("", "") == 1.0
    assert text_similarity("", "word") == 0.0
    assert text_similarity("one", "two") == 0.0


def test_overlapping_spans_pair_on_overlap_basis():
    a = ann("A", fact("a1", 0, 36))
    b = ann("B", fact("b1", 10, 54))
    pairs = align_spans(DOC, a, b, "Fact")
    assert len(pairs) == 1
    assert pairs[0].basis == "overlap"
    assert pairs[0].similarity_score is None
    assert (pairs[0].span_a.id, pairs[0].span_b.id) == ("a1", "b1")


def test_repeated_mention_pairs_on_similarity_basis():
    first = TEXT.index("Hundreds of people were displaced")
    second = TEXT.index("hundreds of people were displaced")
    a = ann("A", fact("a1", first, first + 33))
    b = ann("B", fact("b1", second, second + 33))
    pairs = align_spans(DOC, a, b, "Fact")
    assert len(pairs) == 1
    assert pairs[0].basis == "similarity"
    assert pairs[0].similarity_score == 1.0


def test_dissimilar_disjoint_spans_stay_unpaired():
    shelters = TEXT.index("Emergency shelters")
    a = ann("A", fact("a1", 0, 36))
    b = ann("B", fact("b1", shelters, shelters + 26))
    assert align_spans(DOC, a, b, "Fact") == []


def test_largest_intersection_wins_then_one_to_one():
    # One span in A overlaps two in B; the bigger intersection pairs first,
    # the leftover B span then has no partner.
    a = ann("A", fact("a1", 0, 40))
    b = ann("B", fact("b1", 30, 54), fact("b2", 35, 38))
    pairs = align_spans(DOC, a, b, "Fact")
    assert len(pairs) == 1
    assert pairs[0].span_b.id == "b1"  # intersection 10 beats 3

    used_a = [p.span_a.id for p in pairs]
    assert len(used_a) == len(set(used_a))


def test_alignment_is_symmetric():
    first = TEXT.index("Hundreds of people were displaced")
    second = TEXT.index("hundreds of people were displaced")
    a = ann("A", fact("a1", 0, 36), fact("a2", second, second + 33))
    b = ann("B", fact("b1", 10, 54), fact("b2", first, first + 33))
    ab = align_spans(DOC, a, b, "Fact")
    ba = align_spans(DOC, b, a, "Fact")
    assert {(p.span_a.id, p.span_b.id, p.basis) for p in ab} == \
           {(p.span_b.id, p.span_a.id, p.basis) for p in ba}


def test_threshold_is_inclusive_boundary():
    # Disjoint extents whose texts share some but not all tokens.
    s1 = TEXT.index("people were displaced")
    s2 = TEXT.index("hundreds of people were")
    a = ann("A", fact("a1", s1, s1 + len("people were displaced")))
    b = ann("B", fact("b1", s2, s2 + len("hundreds of people were")))
    sim = text_similarity(
        TEXT[s1:s1 + len("people were displaced")],
        TEXT[s2:s2 + len("hundreds of people were")],
    )
    assert 0 < sim < 1
    at = align_spans(DOC, a, b, "Fact", threshold=sim)
    above = align_spans(DOC, a, b, "Fact", threshold=sim + 1e-9)
    assert len(at) == 1 and at[0].basis == "similarity"
    assert above == []


def test_alignment_requires_same_document():
    other = make_doc(2, TEXT)
    a = ann("A", fact("a1", 0, 10))
    b = Annotation(other.id, "B", "Relevant", "News", spans=(fact("b1", 0, 10),))
    with pytest.raises(ValueError):
        align_spans(DOC, a, b, "Fact")


def test_alignment_only_considers_requested_task():
    a = ann("A", fact("a1", 0, 36),
            SpanLabel(id="c1", task="Cause", label="Disaster", start=37, end=43))
    b = ann("B", SpanLabel(id="c2", task="Cause", label="Disaster", start=37, end=43))
    assert align_spans(DOC, a, b, "Fact") == []
    cause_pairs = align_spans(DOC, a, b, "Cause")
    assert [(p.span_a.id, p.span_b.id) for p in cause_pairs] == [("c1", "c2")]


# --- property: greedy alignment invariants -----------------------------------

@st.composite
def span_sets(draw):
    def spans(prefix):
        n = draw(st.integers(min_value=0, max_value=5))
        out = []
        for i in range(n):
            start = draw(st.integers(min_value=0, max_value=len(TEXT) - 2))
            end = draw(st.integers(min_value=start + 1, max_value=min(len(TEXT), start + 60)))
            out.append(fact(f"{prefix}{i}", start, end))
        return out
    return spans("a"), spans("b")


@settings(max_examples=150, deadline=None)
@given(data=span_sets())
def test_alignment_invariants(data):
    spans_a, spans_b = data
    a = ann("A", *spans_a)
    b = ann("B", *spans_b)
    pairs = align_spans(DOC, a, b, "Fact")

    # one-to-one
    assert len({p.span_a.id for p in pairs}) == len(pairs)
    assert len({p.span_b.id for p in pairs}) == len(pairs)
    assert len(pairs) <= min(len(spans_a), len(spans_b))

    for p in pairs:
        if p.basis == "overlap":
            assert span_overlap(p.span_a, p.span_b)
        else:
            assert not span_overlap(p.span_a, p.span_b)
            sim = text_similarity(
                TEXT[p.span_a.start:p.span_a.end], TEXT[p.span_b.start:p.span_b.end]
            )
            assert sim >= 0.8
            assert p.similarity_score == pytest.approx(sim)

    # no missed overlap: any unpaired a-span overlapping an unpaired b-span
    # would have been a candidate.
    used_a = {p.span_a.id for p in pairs}
    used_b = {p.span_b.id for p in pairs}
    for sa in spans_a:
        if sa.id in used_a:
            continue
        for sb in spans_b:
            if sb.id in used_b:
                continue
            assert not span_overlap(sa, sb)

    # symmetry
    back = align_spans(DOC, b, a, "Fact")
    assert {(p.span_a.id, p.span_b.id) for p in pairs} == \
           {(p.span_b.id, p.span_a.id) for p in back}
