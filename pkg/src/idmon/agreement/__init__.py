"""Inter-annotator agreement: Krippendorff's α, span alignment, reports."""

from __future__ import annotations

from .alignment import (
    BASIS_OVERLAP,
    BASIS_SIMILARITY,
    DEFAULT_SIMILARITY_THRESHOLD,
    SIMILARITY_METRIC_NAME,
    AlignmentPair,
    align_spans,
    span_overlap,
    text_similarity,
)
from .alpha import CoincidenceSummary, ReliabilityData, Unit, alpha
from .distances import (
    DISTANCES,
    any_intersection_distance,
    nominal_distance,
    resolve_distance,
    set_equality_distance,
    tailored_type_distance,
)
from .report import (
    MODES,
    ROUND_CHOICES,
    ROUND_CURRENT,
    ROUND_INITIAL,
    ROUND_REVIEW,
    AgreementReport,
    TaskAgreement,
    agreement_report,
    select_round,
    task_alpha,
)

__all__ = [
    "AgreementReport",
    "AlignmentPair",
    "BASIS_OVERLAP",
    "BASIS_SIMILARITY",
    "CoincidenceSummary",
    "DEFAULT_SIMILARITY_THRESHOLD",
    "DISTANCES",
    "MODES",
    "ROUND_CHOICES",
    "ROUND_CURRENT",
    "ROUND_INITIAL",
    "ROUND_REVIEW",
    "ReliabilityData",
    "SIMILARITY_METRIC_NAME",
    "TaskAgreement",
    "Unit",
    "agreement_report",
    "align_spans",
    "alpha",
    "any_intersection_distance",
    "nominal_distance",
    "resolve_distance",
    "select_round",
    "set_equality_distance",
    "span_overlap",
    "tailored_type_distance",
    "task_alpha",
    "text_similarity",
]
