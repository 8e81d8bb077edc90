"""Backend selection: pinned off-the-shelf models when present, rules otherwise.

Model identities are pinned in models.lock.json next to this package. The
transformer QA backend only activates when its weights are already on disk
(the service never downloads at request time); the rule-based backend is the
deterministic fallback and the one exercised by the golden tests.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from kvshim import rule_parse, rule_qa

log = logging.getLogger("kvshim")

_LOCK_PATH = Path(__file__).resolve().parent / "models.lock.json"


def load_lock() -> dict:
    with open(_LOCK_PATH, encoding="utf-8") as fh:
        return json.load(fh)


@dataclass
class BuiltinParseBackend:
    name: str

    def parse(self, text: str) -> dict:
        return rule_parse.parse(text)


@dataclass
class BuiltinQABackend:
    name: str

    def answer(self, question: str, context: str) -> dict:
        return rule_qa.answer(question, context)


class TransformersQABackend:
    """Extractive QA through a pinned local transformer checkpoint."""

    # the pipeline truncates past the encoder window; responses carry a flag
    max_context_chars = 4000

    def __init__(self, model_name: str):
        from transformers import pipeline  # deferred: heavyweight import

        self.name = model_name
        self._pipe = pipeline("question-answering", model=model_name,
                              tokenizer=model_name)

    def answer(self, question: str, context: str) -> dict:
        truncated = len(context) > self.max_context_chars
        window = context[: self.max_context_chars]
        result = self._pipe(question=question, context=window)
        text = result.get("answer", "") or ""
        if not text:
            return {"answer": "", "score": 0.0, "start": -1, "end": -1,
                    "empty": True, "truncated": truncated}
        start = int(result.get("start", -1))
        end = int(result.get("end", -1))
        if not (0 <= start < end <= len(context) and context[start:end] == text):
            found = context.find(text)
            start, end = (found, found + len(text)) if found >= 0 else (-1, -1)
        return {"answer": text, "score": float(result.get("score", 0.0)),
                "start": start, "end": end, "empty": False, "truncated": truncated}


def _try_transformers_qa(lock: dict):
    model_name = lock.get("qa_model")
    if not model_name:
        return None
    try:
        import transformers  # noqa: F401
    except ImportError:
        log.info("transformers not installed; using the rule-based QA backend")
        return None
    try:
        from huggingface_hub import snapshot_download

        snapshot_download(model_name, local_files_only=True)
    except Exception:
        log.info("QA weights for %s not present locally; using the rule-based "
                 "QA backend", model_name)
        return None
    try:
        return TransformersQABackend(model_name)
    except Exception as exc:
        log.warning("failed to load %s (%s); using the rule-based QA backend",
                    model_name, exc)
        return None


@dataclass
class Backends:
    parser: object
    qa: object
    parser_model: str
    ner_model: str
    qa_model: str


def builtin_backends() -> Backends:
    """The deterministic rule-based pair; also the golden-test target."""
    lock = load_lock()
    tag = f"kvshim-rules/{lock['builtin_version']}"
    qa = BuiltinQABackend(name=f"{tag} (span heuristic)")
    return Backends(parser=BuiltinParseBackend(name=tag), qa=qa,
                    parser_model=f"{tag} (rule parser)",
                    ner_model=f"{tag} (rule ner)",
                    qa_model=qa.name)


def select_backends() -> Backends:
    lock = load_lock()
    backends = builtin_backends()
    qa = _try_transformers_qa(lock)
    if qa is not None:
        backends.qa = qa
        backends.qa_model = qa.name
    return backends
