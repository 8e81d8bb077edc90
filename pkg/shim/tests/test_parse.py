from __future__ import annotations

import pytest

from .sentences import ALL, CREDIT_LOAN, LEASE_TERM, LOAN_PENALTY

CLOSED_POS = {"NOUN", "PROPN", "PRON", "ADJ", "ADP", "VERB", "NUM", "OTHER"}
CLOSED_DEPREL = {"SUBJ", "OBJ", "COMPOUND", "PREP_OBJ", "OTHER"}
CLOSED_ETYPES = {"MONEY", "PERCENT", "DATE", "TIME", "CARDINAL", "ORDINAL", "QUANTITY"}


@pytest.mark.parametrize("name,text", sorted(ALL.items()))
def test_offsets_round_trip_for_every_token_and_entity(client, name, text):
    payload = client.post("/parse", json={"text": text}).json()
    assert payload["tokens"], name
    for token in payload["tokens"]:
        assert text[token["start"]:token["end"]] == token["text"]
    for entity in payload["entities"]:
        assert text[entity["start"]:entity["end"]] == entity["text"]


@pytest.mark.parametrize("name,text", sorted(ALL.items()))
def test_labels_stay_in_closed_sets(client, name, text):
    payload = client.post("/parse", json={"text": text}).json()
    n = len(payload["tokens"])
    roots = 0
    for token in payload["tokens"]:
        assert token["pos"] in CLOSED_POS
        assert token["deprel"] in CLOSED_DEPREL
        assert 0 <= token["head"] < n
        roots += token["head"] == token["i"]
    assert roots == 1
    for entity in payload["entities"]:
        assert entity["etype"] in CLOSED_ETYPES


def test_lease_sentence_entities(client):
    payload = client.post("/parse", json={"text": LEASE_TERM}).json()
    typed = {(e["text"], e["etype"]) for e in payload["entities"]}
    # the two tabulated values, plus the calendar date any ontonotes-style
    # tagger would also emit
    assert {("10.3 years", "DATE"), ("2.0%", "PERCENT")} <= typed


def test_credit_sentence_entities(client):
    payload = client.post("/parse", json={"text": CREDIT_LOAN}).json()
    typed = {(e["text"], e["etype"]) for e in payload["entities"]}
    assert {("$33,000", "MONEY"), ("$60,000 to $93,000", "MONEY")} <= typed


def test_penalty_sentence_entities(client):
    payload = client.post("/parse", json={"text": LOAN_PENALTY}).json()
    typed = {(e["text"], e["etype"]) for e in payload["entities"]}
    assert ("2% and 1%", "PERCENT") in typed
    assert ("13-24 or 25-36", "DATE") in typed


def test_simple_percent_sentence(client):
    payload = client.post("/parse", json={"text": "The discount rate is 2.0%."}).json()
    assert [(e["text"], e["etype"]) for e in payload["entities"]] == [("2.0%", "PERCENT")]


def test_parse_is_deterministic(client):
    first = client.post("/parse", json={"text": CREDIT_LOAN}).json()
    second = client.post("/parse", json={"text": CREDIT_LOAN}).json()
    assert first == second


def test_empty_text_is_400(client):
    assert client.post("/parse", json={"text": ""}).status_code == 400
    assert client.post("/parse", json={}).status_code == 400


def test_oversized_text_is_400(client):
    assert client.post("/parse", json={"text": "a " * 6000}).status_code == 400


def test_health_reports_model_identifiers(client):
    payload = client.get("/health").json()
    assert payload["status"] == "ok"
    for key in ("parser_model", "ner_model", "qa_model"):
        assert payload[key] and "kvshim-rules" in payload[key]
