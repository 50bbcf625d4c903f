#!/usr/bin/env python3
"""Document triage: from resolved annotations to ranked classifiers.

Builds a small labeled corpus the way a real campaign would (majority
resolution over submitted annotations), then trains and evaluates
tf-idf n-gram classifiers over repeated seeded train/test splits and
prints the resulting AuROC table. Reruns are bit-for-bit identical.
"""

import random

from idmon.mlpipe import (
    TASK_RELEVANCE,
    build_labeled_sets,
    evaluate,
)
from idmon.schema import Annotation, SpanLabel

POSITIVE = ("displaced", "evacuated", "shelter", "refugees", "fled")
NEGATIVE = ("budget", "football", "election", "concert", "recipe")
FILLER = ("the", "council", "reported", "that", "on", "monday", "local",
          "officials", "said", "many", "people", "were", "affected")

rng = random.Random(7)
texts: dict[str, str] = {}
annotations: list[Annotation] = []
for i in range(120):
    relevant = i % 2 == 0
    vocab = POSITIVE if relevant else NEGATIVE
    words = [rng.choice(FILLER) for _ in range(24)]
    for _ in range(5):
        words.insert(rng.randrange(len(words)), rng.choice(vocab))
    doc_id = f"doc-{i:04d}"
    text = " ".join(words)
    texts[doc_id] = text
    spans = ()
    if relevant:
        start = text.index(next(w for w in words if w in POSITIVE))
        spans = (SpanLabel(id="f1", task="Fact", label="Relevant fact",
                           start=start, end=start + 4,
                           fact_types=frozenset({"displaced"})),)
    annotations.append(Annotation(
        document_id=doc_id, annotator_id="ana",
        relevance="Relevant" if relevant else "Not Relevant",
        doc_type="News" if relevant else "N/A",
        spans=spans,
    ))

labeled = build_labeled_sets(annotations)[TASK_RELEVANCE]
print("== Labeled set (majority-resolved) ==")
print(f"  task: {labeled.task}")
print(f"  {len(labeled)} documents: {labeled.n_positive} positive / "
      f"{labeled.n_negative} negative")
print()

print("== Classifier comparison (AuROC over 5 seeded splits) ==")
print(f"  {'classifier':<16} {'val AUC':>8} {'test AUC':>9}")
for kind in ("mnb", "logreg", "svm_linear"):
    result = evaluate(kind, texts, labeled, splits=5, seed=0, folds=3, min_df=2)
    print(f"  {kind:<16} {result.validation_auc:>8.3f} {result.test_auc:>9.3f}")
print()

result = evaluate("mnb", texts, labeled, splits=5, seed=0, folds=3, min_df=2)
again = evaluate("mnb", texts, labeled, splits=5, seed=0, folds=3, min_df=2)
print("== Determinism ==")
print(f"  identical rerun, identical report: {result.to_json() == again.to_json()}")
print(f"  per-split test AUCs: {[round(s.test_auc, 3) for s in result.per_split]}")
print()
print("== Feature space ==")
cfg = result.to_json()["config"]
print(f"  tf-idf variant: {cfg['tfidf']}")
print(f"  n-gram range:   {cfg['ngram_range']}, min document frequency {cfg['min_df']}")
first = result.per_split[0]
print(f"  train/test:     {first.n_train}/{first.n_test} documents per split")
