from __future__ import annotations

import pytest
from hypothesis import given, settings

from kvextract.corpus import strip_entities
from kvextract.phrases import PhraseKind, all_phrases, complex_phrases, simple_phrases

from .builders import make_sentence, parsed_sentences
from .oracles import brute_all, brute_complex, brute_simple


def _simple_texts(s):
    return {p.text for p in simple_phrases(s)}


def _complex_texts(s):
    return {p.text for p in complex_phrases(s)}


def test_refinance_sentence_phrases(refinance_doc):
    s = refinance_doc.sentences[0]
    assert _simple_texts(s) == {"loan amount"}
    assert _complex_texts(s) == {"connection with refinance"}


def test_lease_sentence_simple_phrases(walkthrough_doc):
    s3 = walkthrough_doc.sentences[2]
    assert _simple_texts(s3) == {"average lease term", "lease liabilities", "discount rate"}


def test_no_noun_sentence_has_no_phrases():
    s = make_sentence([
        ("Run", "VERB", 0, "OTHER"),
        ("very", "OTHER", 2, "OTHER"),
        ("quickly", "OTHER", 0, "OTHER"),
        (".", "OTHER", 0, "OTHER"),
    ])
    assert simple_phrases(s) == []
    assert complex_phrases(s) == []


def test_bare_noun_without_modifiers_yields_nothing():
    # "we reduced it": pronouns in argument position but nothing to modify them
    s = make_sentence([
        ("we", "PRON", 1, "SUBJ"),
        ("reduced", "VERB", 1, "OTHER"),
        ("it", "PRON", 1, "OBJ"),
    ])
    assert simple_phrases(s) == []


def test_credit_loan_sentence_rank_order(walkthrough_doc):
    s1 = walkthrough_doc.sentences[0]
    ranked = all_phrases(s1)
    assert [(p.text, p.order_rank) for p in ranked] == [
        ("borrowing capacity", 0),
        ("revolving credit loan", 1),
        ("available credit facility", 2),
        ("borrowing capacity on revolving credit loan", 3),
    ]
    assert [p.kind for p in ranked] == [
        PhraseKind.SIMPLE, PhraseKind.SIMPLE, PhraseKind.SIMPLE, PhraseKind.COMPLEX]


def test_entity_tokens_suppress_phrases(walkthrough_doc):
    # with entities present the percent token is blocked; without them the
    # penalty phrase comes back
    s2 = walkthrough_doc.sentences[1]
    assert _simple_texts(s2) == {"loan balance"}
    bare = strip_entities(walkthrough_doc).sentences[1]
    assert _simple_texts(bare) == {"penalty of %", "loan balance"}


def test_zero_phrase_sentence_gives_empty_list():
    s = make_sentence([("it", "PRON", 1, "SUBJ"), ("ran", "VERB", 1, "OTHER")])
    assert all_phrases(s) == []


def test_dedup_keeps_earliest():
    # the same surface form reachable through simple and complex routes
    s = make_sentence([
        ("fund", "NOUN", 1, "COMPOUND"),
        ("share", "NOUN", 2, "OBJ"),
        ("of", "ADP", 1, "OTHER"),
    ])
    # simple: "fund share"; complex from "of" (head "fund") includes "fund of"
    ranked = all_phrases(s)
    texts = [p.text for p in ranked]
    assert len(texts) == len(set(texts))
    assert [p.order_rank for p in ranked] == list(range(len(ranked)))


@settings(max_examples=300, deadline=None)
@given(parsed_sentences())
def test_matches_brute_force_on_small_sentences(s):
    assert [p.text for p in simple_phrases(s)] == brute_simple(s)
    assert [p.text for p in complex_phrases(s)] == brute_complex(s)
    assert [p.text for p in all_phrases(s)] == brute_all(s)


@settings(max_examples=200, deadline=None)
@given(parsed_sentences())
def test_phrase_invariants_hold(s):
    blocked = s.entity_token_indices()
    for p in all_phrases(s):
        assert list(p.token_indices) == sorted(set(p.token_indices))
        assert p.text == " ".join(s.tokens[i].text for i in p.token_indices)
        assert not (set(p.token_indices) & blocked)
        assert p.head_index in p.token_indices


@settings(max_examples=100, deadline=None)
@given(parsed_sentences())
def test_generation_is_deterministic(s):
    first = all_phrases(s)
    second = all_phrases(s)
    assert first == second


def test_modifiers_keep_sentence_order(walkthrough_doc):
    s1 = walkthrough_doc.sentences[0]
    by_text = {p.text: p for p in all_phrases(s1)}
    loan = by_text["revolving credit loan"]
    # revolving (12) and credit (13) precede loan (14) in the sentence and in the phrase
    assert loan.token_indices == (12, 13, 14)
    assert loan.head_index == 14


@pytest.mark.parametrize("sentence_index,expected_complex", [
    (0, {"borrowing capacity on revolving credit loan"}),
    (1, set()),
    (2, {"average remaining lease term"}),
])
def test_complex_phrases_per_sentence(walkthrough_doc, sentence_index, expected_complex):
    s = walkthrough_doc.sentences[sentence_index]
    assert _complex_texts(s) == expected_complex
