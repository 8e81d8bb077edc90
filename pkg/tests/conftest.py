from __future__ import annotations

from pathlib import Path

import pytest

from kvextract.corpus import load_corpus
from kvextract.reader import FixtureReader

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture()
def walkthrough_doc():
    return load_corpus(DATA_DIR / "walkthrough.jsonl")[0]


@pytest.fixture()
def refinance_doc():
    return load_corpus(DATA_DIR / "refinance.jsonl")[0]


@pytest.fixture()
def fixture_reader() -> FixtureReader:
    return FixtureReader(path=DATA_DIR / "reader_fixture.jsonl")
