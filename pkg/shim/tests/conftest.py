from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from kvshim.app import create_app
from kvshim.backends import builtin_backends


@pytest.fixture(scope="session")
def client() -> TestClient:
    # pin the rule-based backends: golden files are versioned against them
    app = create_app(backends=builtin_backends())
    with TestClient(app) as c:
        yield c
