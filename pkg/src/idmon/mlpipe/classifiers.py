"""Classifier fitting, scoring, ROC-AUC, and cross-validation.

Five standard document classifiers run behind one interface; every model
yields a real-valued score monotone in the positive-class likelihood,
which is all AUC needs. Training is deterministic for a given seed.
"""

from __future__ import annotations

from typing import Any, Mapping, Optional, Sequence

import numpy as np
from scipy.stats import rankdata
from sklearn.ensemble import GradientBoostingClassifier, RandomForestClassifier
from sklearn.linear_model import LogisticRegression
from sklearn.model_selection import StratifiedKFold
from sklearn.naive_bayes import MultinomialNB
from sklearn.svm import LinearSVC

from ..errors import FoldDegeneracyError, SingleClassError

CLASSIFIER_KINDS = ("mnb", "logreg", "svm_linear", "random_forest", "gradient_boost")

# Small default grids; single-configuration kinds still go through the
# same tuning loop so validation scores are comparable across kinds.
DEFAULT_GRIDS: dict[str, tuple[Mapping[str, Any], ...]] = {
    "mnb": ({},),
    "logreg": ({"C": 0.1}, {"C": 1.0}, {"C": 10.0}),
    "svm_linear": ({"C": 0.1}, {"C": 1.0}, {"C": 10.0}),
    "random_forest": ({},),
    "gradient_boost": ({},),
}


def _check_binary(y: np.ndarray) -> None:
    classes = np.unique(y)
    if len(classes) < 2:
        raise SingleClassError(
            f"training data holds a single class ({classes.tolist()}); need both"
        )


def fit_classifier(
    kind: str,
    X,
    y: Sequence[int],
    hyperparams: Optional[Mapping[str, Any]] = None,
    seed: int = 0,
):
    """Train one model of the requested kind; returns the fitted model."""
    y = np.asarray(y)
    _check_binary(y)
    params = dict(hyperparams or {})
    if kind == "mnb":
        model = MultinomialNB(alpha=params.get("alpha", 1.0))
    elif kind == "logreg":
        model = LogisticRegression(
            C=params.get("C", 1.0), penalty="l2", tol=1e-4, max_iter=1000
        )
    elif kind == "svm_linear":
        model = LinearSVC(C=params.get("C", 1.0), tol=1e-4, random_state=seed)
    elif kind == "random_forest":
        model = RandomForestClassifier(
            n_estimators=params.get("n_estimators", 200), random_state=seed
        )
    elif kind == "gradient_boost":
        model = GradientBoostingClassifier(
            n_estimators=params.get("n_estimators", 100),
            max_depth=params.get("max_depth", 3),
            random_state=seed,
        )
    else:
        raise ValueError(f"unknown classifier kind {kind!r}; choose from {CLASSIFIER_KINDS}")
    model.fit(X, y)
    return model


def predict_scores(model, X) -> np.ndarray:
    """Positive-class scores: probability where available, signed margin
    otherwise."""
    if hasattr(model, "predict_proba"):
        return np.asarray(model.predict_proba(X))[:, 1]
    return np.asarray(model.decision_function(X))


def roc_auc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Probability that a random positive outscores a random negative,
    ties counting one half (the Mann–Whitney formulation via ranks)."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    positive = labels == 1
    n_pos = int(positive.sum())
    n_neg = int(len(labels) - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("AUC needs at least one positive and one negative")
    ranks = rankdata(scores)
    return float((ranks[positive].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def cross_validate(
    kind: str,
    X,
    y: Sequence[int],
    k: int = 10,
    seed: int = 0,
    hyperparams: Optional[Mapping[str, Any]] = None,
) -> float:
    """Mean AuROC over stratified k folds; deterministic per seed."""
    y = np.asarray(y)
    _check_binary(y)
    counts = np.bincount(y)
    smallest = int(counts[counts > 0].min())
    if smallest < k:
        raise FoldDegeneracyError(
            f"{k}-fold stratification impossible: smallest class holds "
            f"{smallest} samples",
            details={"k": k, "smallest_class": smallest},
        )
    folds = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    aucs = []
    for train_idx, val_idx in folds.split(X, y):
        model = fit_classifier(kind, X[train_idx], y[train_idx], hyperparams, seed=seed)
        aucs.append(roc_auc(predict_scores(model, X[val_idx]), y[val_idx]))
    return float(np.mean(aucs))
