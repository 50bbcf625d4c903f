"""Document-triage machine learning: TF-IDF features, five classifiers,
cross-validated tuning, and repeated-split AUC evaluation."""

from __future__ import annotations

from .classifiers import (
    CLASSIFIER_KINDS,
    DEFAULT_GRIDS,
    cross_validate,
    fit_classifier,
    predict_scores,
    roc_auc,
)
from .evaluate import (
    DEFAULT_FOLDS,
    DEFAULT_SPLITS,
    DEFAULT_TEST_FRACTION,
    EvalResult,
    SplitResult,
    evaluate,
)
from .features import (
    DEFAULT_MIN_DF,
    DEFAULT_N_MAX,
    DEFAULT_N_MIN,
    TFIDF_VARIANT,
    Vocabulary,
    extract_ngrams,
    fit_vocabulary,
    tokenize,
    transform_tfidf,
)
from .labels import TASK_RELEVANCE, TASK_TYPE, LabeledSet, build_labeled_sets

__all__ = [
    "CLASSIFIER_KINDS",
    "DEFAULT_FOLDS",
    "DEFAULT_GRIDS",
    "DEFAULT_MIN_DF",
    "DEFAULT_N_MAX",
    "DEFAULT_N_MIN",
    "DEFAULT_SPLITS",
    "DEFAULT_TEST_FRACTION",
    "EvalResult",
    "LabeledSet",
    "SplitResult",
    "TASK_RELEVANCE",
    "TASK_TYPE",
    "TFIDF_VARIANT",
    "Vocabulary",
    "build_labeled_sets",
    "cross_validate",
    "evaluate",
    "extract_ngrams",
    "fit_classifier",
    "fit_vocabulary",
    "predict_scores",
    "roc_auc",
    "tokenize",
    "transform_tfidf",
]
