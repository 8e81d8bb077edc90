"""Golden-file pins for /parse and /answer under the locked rule backends.

Responses are versioned artifacts: any change to the tokenizer, tagger,
dependency heuristics, NER patterns, or QA ranking shows up as a diff here.
Regenerate intentionally with UPDATE_GOLDENS=1 pytest tests/test_golden.py.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

from .sentences import ALL

GOLDEN_DIR = Path(__file__).resolve().parent / "goldens"

QUESTIONS = [
    ("How much is borrowing capacity on revolving credit loan ?", "credit_loan"),
    ("How much is borrowing capacity ?", "credit_loan"),
    ("How much is revolving credit loan ?", "credit_loan"),
    ("How much is available credit facility ?", "credit_loan"),
    ("What is penalty of % ?", "loan_penalty"),
    ("What is loan balance ?", "loan_penalty"),
    ("What is 13-24 or 25-36 ?", "loan_penalty"),
    ("What is 2% and 1% ?", "loan_penalty"),
    ("What is average lease term ?", "lease_term"),
    ("What is discount rate ?", "lease_term"),
    ("When is average lease term ?", "lease_term"),
    ("What is $6.8 million ?", "refinance"),
    ("How much is loan amount ?", "refinance"),
]


def _check(path: Path, payload: dict) -> None:
    if os.environ.get("UPDATE_GOLDENS"):
        path.parent.mkdir(exist_ok=True)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    expected = json.loads(path.read_text(encoding="utf-8"))
    assert payload == expected, f"response drifted from {path.name}"


@pytest.mark.parametrize("name", sorted(ALL))
def test_parse_golden(client, name):
    payload = client.post("/parse", json={"text": ALL[name]}).json()
    _check(GOLDEN_DIR / f"parse_{name}.json", payload)


def test_answer_golden(client):
    payload = {}
    for question, name in QUESTIONS:
        response = client.post("/answer",
                               json={"question": question, "context": ALL[name]})
        payload[f"{name} :: {question}"] = response.json()
    _check(GOLDEN_DIR / "answers.json", payload)
