"""Extractive reading-comprehension backends behind one ``answer`` interface.

Three implementations:

* ``FixtureReader``: exact (question, context) lookup in a JSONL table; a
  miss is an abstention. The workhorse for tests and walkthroughs.
* ``NearestEntityReader``: a deterministic heuristic that answers forward
  questions with the entity nearest the question's source tokens (and
  reverse questions with the nearest phrase). Smoke/property testing only.
* ``RemoteReader``: HTTP client for a model service speaking the
  ``POST /answer`` JSON protocol, with retries and a bounded request pool.

Confidences are the backend's span probabilities in [0, 1] and are never
renormalized here; the association step compares them raw.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import requests

from kvextract.corpus import Document, ParsedSentence
from kvextract.phrases import all_phrases
from kvextract.questions import Question, QuestionDirection


class ReaderError(RuntimeError):
    """Transport or contract failure while querying a reader backend."""


@dataclass(frozen=True)
class ReaderAnswer:
    """An answer span with confidence; offsets are -1 when unlocatable."""

    text: str
    confidence: float
    char_start: int = -1
    char_end: int = -1
    empty: bool = False

    @staticmethod
    def abstain() -> "ReaderAnswer":
        return ReaderAnswer(text="", confidence=0.0, char_start=-1, char_end=-1, empty=True)


class ReaderKind(str, Enum):
    FIXTURE = "FIXTURE"
    NEAREST_ENTITY = "NEAREST_ENTITY"
    REMOTE = "REMOTE"


@dataclass(frozen=True)
class ReaderSpec:
    """Configuration for building a reader backend."""

    kind: ReaderKind
    endpoint: str | None = None
    fixture_path: str | Path | None = None
    timeout: float = 10.0
    retries: int = 2
    max_in_flight: int = 8
    backoff_s: float = 0.25

    def validate(self) -> None:
        if self.kind is ReaderKind.REMOTE and not self.endpoint:
            raise ValueError("REMOTE reader requires an endpoint")
        if self.kind is ReaderKind.FIXTURE and not self.fixture_path:
            raise ValueError("FIXTURE reader requires a fixture_path")


class Reader:
    """Interface: answer a question against a sentence-sized context."""

    def answer(self, question: Question, context: str) -> ReaderAnswer:
        raise NotImplementedError


def _reconcile_offsets(text: str, context: str, start: int, end: int) -> tuple[int, int]:
    """Validate reported offsets against the context; fall back to search.

    Offset conventions are the main cross-runtime hazard, so a span that does
    not reproduce the answer text is replaced by the first occurrence of the
    text, or (-1, -1) when it does not occur at all.
    """
    if start >= 0 and end >= start and context[start:end] == text:
        return start, end
    found = context.find(text) if text else -1
    if found >= 0:
        return found, found + len(text)
    return -1, -1


class FixtureReader(Reader):
    """Answers from a frozen (question, context) -> answer table."""

    def __init__(self, rows: Sequence[dict] | None = None,
                 path: str | Path | None = None):
        self._table: dict[tuple[str, str], ReaderAnswer] = {}
        if rows:
            for row in rows:
                self.add_row(row)
        if path is not None:
            self._load(Path(path))

    def _load(self, path: Path) -> None:
        try:
            with open(path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        row = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise ReaderError(f"{path}:{lineno}: invalid fixture JSON: {exc.msg}")
                    self.add_row(row)
        except OSError as exc:
            raise ReaderError(f"cannot read fixture file {path}: {exc}") from exc

    def add_row(self, row: dict) -> None:
        answer_text = str(row["answer"])
        context = str(row["context"])
        start = int(row.get("start", -1))
        end = int(row.get("end", -1))
        start, end = _reconcile_offsets(answer_text, context, start, end)
        self._table[(str(row["question"]), context)] = ReaderAnswer(
            text=answer_text,
            confidence=float(row.get("score", 0.0)),
            char_start=start,
            char_end=end,
            empty=not answer_text,
        )

    def answer(self, question: Question, context: str) -> ReaderAnswer:
        return self._table.get((question.text, context), ReaderAnswer.abstain())


def _token_span_distance(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Token distance between two inclusive index ranges (0 when they overlap)."""
    if b[0] > a[1]:
        return b[0] - a[1]
    if a[0] > b[1]:
        return a[0] - b[1]
    return 0


class NearestEntityReader(Reader):
    """Deterministic proximity heuristic over a known corpus.

    Forward questions are answered with the entity mention whose token span
    is closest to the source phrase; reverse questions with the closest
    generated phrase. Confidence is 1/(1 + token distance), so it strictly
    decreases with distance.
    """

    def __init__(self, docs: Sequence[Document]):
        self._by_text: dict[str, ParsedSentence] = {}
        for doc in docs:
            for s in doc.sentences:
                self._by_text.setdefault(s.text, s)

    def answer(self, question: Question, context: str) -> ReaderAnswer:
        sentence = self._by_text.get(context)
        if sentence is None:
            return ReaderAnswer.abstain()
        if question.direction is QuestionDirection.FORWARD:
            return self._nearest_entity(question, sentence)
        return self._nearest_phrase(question, sentence)

    def _nearest_entity(self, question: Question, s: ParsedSentence) -> ReaderAnswer:
        if question.source_phrase is None or not s.entities:
            return ReaderAnswer.abstain()
        span = (question.source_phrase.token_indices[0],
                question.source_phrase.token_indices[-1])
        best = None
        for e in s.entities:
            erange = s.entity_token_range(e)
            d = _token_span_distance(span, erange)
            key = (d, e.char_start)
            if best is None or key < best[0]:
                best = (key, e)
        (distance, _), entity = best
        return ReaderAnswer(text=entity.text, confidence=1.0 / (1.0 + distance),
                            char_start=entity.char_start, char_end=entity.char_end)

    def _nearest_phrase(self, question: Question, s: ParsedSentence) -> ReaderAnswer:
        if question.source_entity is None:
            return ReaderAnswer.abstain()
        phrases = all_phrases(s)
        if not phrases:
            return ReaderAnswer.abstain()
        erange = s.entity_token_range(question.source_entity)
        best = None
        for p in phrases:
            span = (p.token_indices[0], p.token_indices[-1])
            d = _token_span_distance(erange, span)
            key = (d, p.order_rank)
            if best is None or key < best[0]:
                best = (key, p)
        (distance, _), phrase = best
        start, end = _reconcile_offsets(phrase.text, s.text, -1, -1)
        return ReaderAnswer(text=phrase.text, confidence=1.0 / (1.0 + distance),
                            char_start=start, char_end=end)


class RemoteReader(Reader):
    """HTTP client for the /answer wire protocol, with retries and a pool cap."""

    def __init__(self, spec: ReaderSpec):
        spec.validate()
        self._spec = spec
        self._endpoint = spec.endpoint.rstrip("/")
        self._session = requests.Session()
        self._slots = threading.BoundedSemaphore(max(1, spec.max_in_flight))

    def preflight(self) -> None:
        """Raise ReaderError if the service cannot be reached at all."""
        try:
            self._session.get(f"{self._endpoint}/health", timeout=self._spec.timeout)
        except requests.RequestException as exc:
            raise ReaderError(f"reader endpoint {self._endpoint} unreachable: {exc}") from exc

    def answer(self, question: Question, context: str) -> ReaderAnswer:
        payload = {"question": question.text, "context": context}
        last_error: Exception | None = None
        for attempt in range(self._spec.retries + 1):
            if attempt:
                time.sleep(self._spec.backoff_s * (2 ** (attempt - 1)))
            try:
                with self._slots:
                    response = self._session.post(f"{self._endpoint}/answer",
                                                  json=payload, timeout=self._spec.timeout)
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code != 200:
                last_error = ReaderError(
                    f"reader returned HTTP {response.status_code} for {question.text!r}")
                continue
            return self._parse(response, context)
        raise ReaderError(f"reader request failed after {self._spec.retries + 1} attempts: "
                          f"{last_error}")

    def _parse(self, response: requests.Response, context: str) -> ReaderAnswer:
        try:
            body = response.json()
            text = str(body["answer"])
            score = float(body["score"])
            start = int(body.get("start", -1))
            end = int(body.get("end", -1))
            empty = bool(body.get("empty", not text))
        except (ValueError, KeyError, TypeError) as exc:
            raise ReaderError(f"malformed reader response: {exc}") from exc
        if not 0.0 <= score <= 1.0:
            raise ReaderError(f"reader confidence {score} outside [0, 1]")
        if empty or not text:
            return ReaderAnswer.abstain()
        start, end = _reconcile_offsets(text, context, start, end)
        return ReaderAnswer(text=text, confidence=score, char_start=start, char_end=end)


def build_reader(spec: ReaderSpec, docs: Sequence[Document] = ()) -> Reader:
    """Construct the backend named by the spec (docs feed NEAREST_ENTITY)."""
    spec.validate()
    if spec.kind is ReaderKind.FIXTURE:
        return FixtureReader(path=spec.fixture_path)
    if spec.kind is ReaderKind.NEAREST_ENTITY:
        return NearestEntityReader(docs)
    return RemoteReader(spec)
