"""Repeated train/test evaluation with per-split vocabulary fitting.

Every split re-fits the vocabulary on its training portion only, so no
test document ever influences document frequencies; hyperparameters are
tuned by stratified cross-validation inside the training portion; the
test portion is scored once. Split seeds derive from (master seed, split
index), making results independent of execution order.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from ..errors import SingleClassError, UnknownDocumentError
from ..jsonio import dumps_pretty
from ..schema import Document
from .classifiers import (
    DEFAULT_GRIDS,
    cross_validate,
    fit_classifier,
    predict_scores,
    roc_auc,
)
from .features import (
    DEFAULT_MIN_DF,
    DEFAULT_N_MAX,
    DEFAULT_N_MIN,
    TFIDF_VARIANT,
    fit_vocabulary,
    transform_tfidf,
)
from .labels import LabeledSet

DEFAULT_SPLITS = 50
DEFAULT_TEST_FRACTION = 0.2
DEFAULT_FOLDS = 10


@dataclass(frozen=True)
class SplitResult:
    split: int
    validation_auc: float
    test_auc: float
    hyperparams: Mapping[str, Any]
    n_train: int
    n_test: int

    def to_json(self) -> dict[str, Any]:
        return {
            "split": self.split,
            "validation_auc": self.validation_auc,
            "test_auc": self.test_auc,
            "hyperparams": dict(self.hyperparams),
            "n_train": self.n_train,
            "n_test": self.n_test,
        }


@dataclass(frozen=True)
class EvalResult:
    """Aggregate of one classifier on one task, plus full config echo."""

    classifier: str
    task: str
    splits: int
    seed: int
    folds: int
    test_fraction: float
    min_df: int
    n_min: int
    n_max: int
    tfidf_variant: str
    validation_auc: float
    test_auc: float
    validation_auc_std: float
    test_auc_std: float
    per_split: tuple[SplitResult, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "classifier": self.classifier,
            "task": self.task,
            "validation_auc": self.validation_auc,
            "test_auc": self.test_auc,
            "validation_auc_std": self.validation_auc_std,
            "test_auc_std": self.test_auc_std,
            "config": {
                "splits": self.splits,
                "seed": self.seed,
                "folds": self.folds,
                "test_fraction": self.test_fraction,
                "min_df": self.min_df,
                "ngram_range": [self.n_min, self.n_max],
                "tfidf": self.tfidf_variant,
            },
        }

    def splits_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            ["split", "validation_auc", "test_auc", "hyperparams", "n_train", "n_test"]
        )
        for row in self.per_split:
            params = ";".join(f"{k}={row.hyperparams[k]}" for k in sorted(row.hyperparams))
            writer.writerow(
                [row.split, row.validation_auc, row.test_auc, params, row.n_train, row.n_test]
            )
        return buffer.getvalue()


def _texts_by_id(corpus: Mapping[str, str] | Iterable[Document]) -> dict[str, str]:
    if isinstance(corpus, Mapping):
        return dict(corpus)
    return {d.id: d.text for d in corpus}


def _stratified_split(
    y: np.ndarray, test_fraction: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Index split keeping both classes on both sides."""
    train_idx: list[int] = []
    test_idx: list[int] = []
    for cls in np.unique(y):
        members = np.flatnonzero(y == cls)
        members = rng.permutation(members)
        n_test = int(round(test_fraction * len(members)))
        n_test = max(1, min(len(members) - 1, n_test))
        test_idx.extend(members[:n_test].tolist())
        train_idx.extend(members[n_test:].tolist())
    return np.sort(np.asarray(train_idx)), np.sort(np.asarray(test_idx))


def evaluate(
    kind: str,
    corpus: Mapping[str, str] | Iterable[Document],
    labeled: LabeledSet,
    splits: int = DEFAULT_SPLITS,
    seed: int = 0,
    *,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    folds: int = DEFAULT_FOLDS,
    min_df: int = DEFAULT_MIN_DF,
    n_min: int = DEFAULT_N_MIN,
    n_max: int = DEFAULT_N_MAX,
    grid: Optional[Sequence[Mapping[str, Any]]] = None,
) -> EvalResult:
    """Average validation and test AuROC over repeated seeded splits."""
    texts = _texts_by_id(corpus)
    missing = [i for i in labeled.document_ids if i not in texts]
    if missing:
        raise UnknownDocumentError(
            f"{len(missing)} labeled documents missing from the corpus "
            f"(first: {missing[0]})"
        )
    docs = [texts[i] for i in labeled.document_ids]
    y = np.asarray(labeled.labels)
    if len(np.unique(y)) < 2:
        raise SingleClassError(f"labeled set {labeled.task!r} holds a single class")
    configurations = tuple(grid) if grid is not None else DEFAULT_GRIDS[kind]

    results: list[SplitResult] = []
    for split in range(splits):
        rng = np.random.default_rng(np.random.SeedSequence([seed, split]))
        split_seed = int(rng.integers(2**31 - 1))
        train_idx, test_idx = _stratified_split(y, test_fraction, rng)
        train_texts = [docs[i] for i in train_idx]
        test_texts = [docs[i] for i in test_idx]
        y_train, y_test = y[train_idx], y[test_idx]

        vocab = fit_vocabulary(train_texts, min_df=min_df, n_min=n_min, n_max=n_max)
        x_train = transform_tfidf(vocab, train_texts)
        x_test = transform_tfidf(vocab, test_texts)

        best_params: Mapping[str, Any] = {}
        best_auc = -1.0
        for params in configurations:
            auc = cross_validate(kind, x_train, y_train, k=folds, seed=split_seed, hyperparams=params)
            if auc > best_auc:
                best_auc, best_params = auc, params
        model = fit_classifier(kind, x_train, y_train, best_params, seed=split_seed)
        test_auc = roc_auc(predict_scores(model, x_test), y_test)
        results.append(
            SplitResult(
                split=split,
                validation_auc=best_auc,
                test_auc=test_auc,
                hyperparams=best_params,
                n_train=len(train_idx),
                n_test=len(test_idx),
            )
        )

    val_aucs = np.array([r.validation_auc for r in results])
    test_aucs = np.array([r.test_auc for r in results])
    return EvalResult(
        classifier=kind,
        task=labeled.task,
        splits=splits,
        seed=seed,
        folds=folds,
        test_fraction=test_fraction,
        min_df=min_df,
        n_min=n_min,
        n_max=n_max,
        tfidf_variant=TFIDF_VARIANT,
        validation_auc=float(val_aucs.mean()),
        test_auc=float(test_aucs.mean()),
        validation_auc_std=float(val_aucs.std()),
        test_auc_std=float(test_aucs.std()),
        per_split=tuple(results),
    )
