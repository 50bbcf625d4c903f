"""N-gram extraction, vocabulary fitting, and TF-IDF features.

The tokenizer is whitespace/punctuation-based and language-agnostic so
the same pipeline runs on English, French, and Spanish corpora. The
TF-IDF variant is the smoothed form

    weight(t, d) = tf(t, d) × (ln((1 + N) / (1 + df(t))) + 1)

with raw term counts and L2-normalized rows; the variant name is echoed
into evaluation reports since it shifts absolute scores.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse

from ..errors import EmptyVocabularyError

TFIDF_VARIANT = "raw-tf-smoothed-idf-l2"

DEFAULT_N_MIN = 1
DEFAULT_N_MAX = 5
DEFAULT_MIN_DF = 5

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def extract_ngrams(text: str, n_min: int = DEFAULT_N_MIN, n_max: int = DEFAULT_N_MAX) -> Counter:
    """Multiset of word-level n-grams, n_min ≤ n ≤ n_max, as joined strings.

    An L-token text yields Σ_n max(0, L − n + 1) n-grams.
    """
    if n_min < 1 or n_min > n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got [{n_min}, {n_max}]")
    tokens = tokenize(text)
    grams: Counter = Counter()
    for n in range(n_min, n_max + 1):
        for i in range(len(tokens) - n + 1):
            grams[" ".join(tokens[i : i + n])] += 1
    return grams


@dataclass(frozen=True)
class Vocabulary:
    """Retained n-grams with dense, stable column indices."""

    index: Mapping[str, int]
    document_frequency: Mapping[str, int]
    n_documents: int
    n_min: int
    n_max: int
    min_df: int

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def idf(self, term: str) -> float:
        df = self.document_frequency[term]
        return math.log((1 + self.n_documents) / (1 + df)) + 1.0


def fit_vocabulary(
    corpus: Sequence[str],
    min_df: int = DEFAULT_MIN_DF,
    n_min: int = DEFAULT_N_MIN,
    n_max: int = DEFAULT_N_MAX,
) -> Vocabulary:
    """Fit on a corpus of texts, keeping n-grams present in ≥ min_df docs.

    Raises EmptyVocabularyError when the threshold removes every term —
    a distinct condition callers surface, since it usually means the
    corpus is far too small for the configured min_df.
    """
    if not corpus:
        raise ValueError("cannot fit a vocabulary on an empty corpus")
    df: Counter = Counter()
    for text in corpus:
        df.update(set(extract_ngrams(text, n_min, n_max)))
    retained = sorted(term for term, count in df.items() if count >= min_df)
    if not retained:
        raise EmptyVocabularyError(
            f"no n-gram reaches document frequency {min_df} in {len(corpus)} documents"
        )
    return Vocabulary(
        index={term: i for i, term in enumerate(retained)},
        document_frequency={term: df[term] for term in retained},
        n_documents=len(corpus),
        n_min=n_min,
        n_max=n_max,
        min_df=min_df,
    )


def transform_tfidf(vocab: Vocabulary, corpus: Iterable[str]) -> sparse.csr_matrix:
    """Sparse TF-IDF rows aligned to the vocabulary's column indices.

    Documents containing no retained term become zero rows; all weights
    are non-negative.
    """
    idf = np.zeros(len(vocab), dtype=float)
    for term, col in vocab.index.items():
        idf[col] = vocab.idf(term)

    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for text in corpus:
        grams = extract_ngrams(text, vocab.n_min, vocab.n_max)
        row = {
            vocab.index[term]: count
            for term, count in grams.items()
            if term in vocab.index
        }
        cols = sorted(row)
        weights = np.array([row[c] * idf[c] for c in cols], dtype=float)
        norm = float(np.sqrt((weights**2).sum()))
        if norm > 0:
            weights /= norm
        indices.extend(cols)
        data.extend(weights.tolist())
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.asarray(data), np.asarray(indices, dtype=np.int32), np.asarray(indptr, dtype=np.int32)),
        shape=(len(indptr) - 1, len(vocab)),
    )
