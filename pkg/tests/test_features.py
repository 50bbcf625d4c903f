"""N-gram TF-IDF features: tokenizer, vocabulary thresholding, weighting,
and normalization, checked against small hand computations."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idmon.errors import EmptyVocabularyError
from idmon.mlpipe.features import (
    TFIDF_VARIANT,
    Vocabulary,
    extract_ngrams,
    fit_vocabulary,
    tokenize,
    transform_tfidf,
)
import oracles


def test_tokenizer_is_case_and_punctuation_insensitive():
    assert tokenize("Hundreds were DISPLACED, sadly.") == ["hundreds", "were", "displaced", "sadly"]
    assert tokenize("déplacés à l'intérieur") == ["déplacés", "à", "l", "intérieur"]
    assert tokenize("snake_case stays out") == ["snake", "case", "stays", "out"]
    assert tokenize("") == []


def test_extract_ngrams_counts():
    grams = extract_ngrams("a b a b", n_min=1, n_max=2)
    assert grams["a"] == 2 and grams["b"] == 2
    assert grams["a b"] == 2 and grams["b a"] == 1
    # Σ_n max(0, L−n+1): L=4 → 4 + 3 = 7 grams in total.
    assert sum(grams.values()) == 7

    assert extract_ngrams("one two", n_min=3, n_max=5) == {}
    with pytest.raises(ValueError):
        extract_ngrams("x", n_min=0, n_max=2)
    with pytest.raises(ValueError):
        extract_ngrams("x", n_min=3, n_max=2)


@given(st.lists(st.sampled_from("abc"), min_size=0, max_size=12))
def test_extract_ngram_totals_match_length_formula(tokens):
    text = " ".join(tokens)
    for n_min, n_max in ((1, 5), (2, 3)):
        grams = extract_ngrams(text, n_min, n_max)
        want = sum(max(0, len(tokens) - n + 1) for n in range(n_min, n_max + 1))
        assert sum(grams.values()) == want
        assert grams == oracles.ngram_counts(text, n_min, n_max)


def test_fit_vocabulary_min_df_threshold():
    corpus = ["flood river", "flood town", "flood plain", "storm plain"]
    vocab = fit_vocabulary(corpus, min_df=2, n_min=1, n_max=1)
    assert set(vocab.index) == {"flood", "plain"}
    assert vocab.document_frequency == {"flood": 3, "plain": 2}
    assert vocab.n_documents == 4
    # Columns are densely numbered in sorted-term order.
    assert sorted(vocab.index.values()) == list(range(len(vocab)))
    assert vocab.index["flood"] < vocab.index["plain"]

    with pytest.raises(EmptyVocabularyError):
        fit_vocabulary(corpus, min_df=4, n_min=1, n_max=1)
    with pytest.raises(ValueError):
        fit_vocabulary([], min_df=1)


def test_document_frequency_counts_documents_not_occurrences():
    corpus = ["flood flood flood", "dry"]
    vocab = fit_vocabulary(corpus, min_df=1, n_min=1, n_max=1)
    assert vocab.document_frequency["flood"] == 1


def test_idf_matches_hand_formula():
    corpus = ["flood river", "flood town", "flood plain", "storm plain"]
    vocab = fit_vocabulary(corpus, min_df=1, n_min=1, n_max=1)
    for term, df in vocab.document_frequency.items():
        assert vocab.idf(term) == pytest.approx(oracles.idf(4, df))
    # A term in every document still gets positive weight (the +1 shift).
    assert vocab.idf("flood") == pytest.approx(math.log(5 / 4) + 1)


def test_transform_rows_are_l2_normalized():
    corpus = ["flood river flood", "flood town", "storm town", "flood storm"]
    vocab = fit_vocabulary(corpus, min_df=1, n_min=1, n_max=1)
    X = transform_tfidf(vocab, corpus)
    assert X.shape == (4, len(vocab))
    norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
    assert np.allclose(norms, 1.0)
    assert (X.data >= 0).all()


def test_transform_matches_hand_weighting():
    corpus = ["flood river flood", "flood town"]
    vocab = fit_vocabulary(corpus, min_df=1, n_min=1, n_max=1)
    X = transform_tfidf(vocab, corpus).toarray()

    # Row 0: tf(flood)=2, tf(river)=1; idf from N=2 with df 2 and 1.
    w_flood = 2 * oracles.idf(2, 2)
    w_river = 1 * oracles.idf(2, 1)
    norm = math.hypot(w_flood, w_river)
    assert X[0, vocab.index["flood"]] == pytest.approx(w_flood / norm)
    assert X[0, vocab.index["river"]] == pytest.approx(w_river / norm)
    assert X[0, vocab.index["town"]] == 0.0


def test_transform_handles_unseen_and_empty_documents():
    vocab = fit_vocabulary(["flood river", "flood town"], min_df=2, n_min=1, n_max=1)
    X = transform_tfidf(vocab, ["storm surge only", "", "flood"])
    rows = X.toarray()
    assert np.count_nonzero(rows[0]) == 0  # nothing retained
    assert np.count_nonzero(rows[1]) == 0  # empty text
    assert rows[2, vocab.index["flood"]] == pytest.approx(1.0)  # single term, unit norm


def test_long_ngrams_participate():
    phrase = "hundreds of people were displaced"
    corpus = [f"{phrase} in march", f"{phrase} by floods", "unrelated text entirely here"]
    vocab = fit_vocabulary(corpus, min_df=2, n_min=1, n_max=5)
    assert phrase in vocab
    assert vocab.document_frequency[phrase] == 2


def test_variant_name_is_stable():
    assert TFIDF_VARIANT == "raw-tf-smoothed-idf-l2"
