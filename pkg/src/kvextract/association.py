"""Assigning each entity its best-supported description.

Every forward question is asked once per sentence and the answers cached.
An entity is keyed by the source phrase of the highest-confidence forward
answer that contains it (ties break toward the earliest-generated phrase).
One answer span may contain several entities, so a single question can key
them all. Entities left over go through the reverse fallback: the answer to
"What is <entity> ?" becomes the key, unless it is empty or overlaps any
entity mention of the sentence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, Sequence

from kvextract.corpus import EntityMention, ParsedSentence
from kvextract.phrases import NounPhrase
from kvextract.questions import Question, QuestionDirection, reverse_question
from kvextract.reader import Reader, ReaderAnswer, ReaderError


class KeySource(str, Enum):
    FORWARD_PHRASE = "FORWARD_PHRASE"
    REVERSE_ANSWER = "REVERSE_ANSWER"


@dataclass(frozen=True)
class ExtractionPair:
    """A (value, description) extraction with its supporting evidence."""

    document_id: str
    sentence_id: str
    entity: EntityMention
    key: str
    key_source: KeySource
    question_text: str
    answer_text: str
    confidence: float

    def to_record(self) -> dict:
        return {
            "document_id": self.document_id,
            "sentence_id": self.sentence_id,
            "entity": self.entity.text,
            "etype": self.entity.etype.value,
            "key": self.key,
            "key_source": self.key_source.value,
            "question": self.question_text,
            "answer": self.answer_text,
            "confidence": self.confidence,
        }


@dataclass
class SentenceDiagnostics:
    """Per-sentence accounting of questions asked and answers discarded."""

    document_id: str = ""
    sentence_id: str = ""
    entity_count: int = 0
    phrase_count: int = 0
    forward_questions: int = 0
    reverse_questions: int = 0
    reverse_discarded_empty: int = 0
    reverse_discarded_entity_overlap: int = 0
    reader_errors: int = 0
    pairs: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _delimited_occurrence(haystack: str, needle: str) -> bool:
    """True when needle occurs in haystack bounded by whitespace/punctuation."""
    if not needle:
        return False
    start = haystack.find(needle)
    while start >= 0:
        before = haystack[start - 1] if start > 0 else None
        after_idx = start + len(needle)
        after = haystack[after_idx] if after_idx < len(haystack) else None
        if (before is None or not before.isalnum()) and (after is None or not after.isalnum()):
            return True
        start = haystack.find(needle, start + 1)
    return False


def contains_entity(answer: ReaderAnswer, e: EntityMention, context: str) -> bool:
    """Does the answer span contain the entity?

    Uses character spans when the answer carries offsets; otherwise falls
    back to a delimited-substring test on the answer text.
    """
    if answer.empty:
        return False
    if answer.char_start >= 0 and answer.char_end >= 0:
        return answer.char_start <= e.char_start and e.char_end <= answer.char_end
    return _delimited_occurrence(answer.text, e.text)


def _overlaps_any_entity(answer: ReaderAnswer, s: ParsedSentence) -> bool:
    """Reverse-direction discard test: any overlap with any entity span.

    Span overlap (not containment) so that a numeric sub-fragment of an
    entity, e.g. "2" out of "2% and 1%", still disqualifies the answer.
    """
    if answer.char_start >= 0 and answer.char_end >= 0:
        return any(answer.char_start < e.char_end and answer.char_end > e.char_start
                   for e in s.entities)
    return any(_delimited_occurrence(answer.text, e.text)
               or _delimited_occurrence(e.text, answer.text)
               for e in s.entities)


def _ask(reader: Reader, question: Question, context: str,
         diagnostics: SentenceDiagnostics | None) -> ReaderAnswer:
    try:
        return reader.answer(question, context)
    except ReaderError:
        # An errored question is treated like a containment failure: the
        # question is discarded and the error counted.
        if diagnostics is not None:
            diagnostics.reader_errors += 1
        return ReaderAnswer.abstain()


def associate(s: ParsedSentence, phrases: Sequence[NounPhrase],
              questions: Sequence[Question], reader: Reader,
              diagnostics: SentenceDiagnostics | None = None) -> list[ExtractionPair]:
    """Produce at most one (entity, key) pair per entity of the sentence."""
    if diagnostics is not None:
        diagnostics.document_id = s.document_id
        diagnostics.sentence_id = s.sentence_id
        diagnostics.entity_count = len(s.entities)
        diagnostics.phrase_count = len(phrases)

    forward = [q for q in questions if q.direction is QuestionDirection.FORWARD]
    answers: dict[str, ReaderAnswer] = {}
    for q in forward:
        if q.text not in answers:
            answers[q.text] = _ask(reader, q, s.text, diagnostics)
    if diagnostics is not None:
        diagnostics.forward_questions = len(answers)

    pairs: list[ExtractionPair] = []
    unkeyed: list[EntityMention] = []
    for e in s.entities:
        candidates: list[tuple[Question, ReaderAnswer]] = []
        for q in forward:
            a = answers[q.text]
            if not a.empty and contains_entity(a, e, s.text):
                candidates.append((q, a))
        if not candidates:
            unkeyed.append(e)
            continue
        # Argmax on confidence; equal confidences fall back to the
        # earliest-generated phrase, making selection order-independent.
        q, a = max(candidates,
                   key=lambda qa: (qa[1].confidence, -qa[0].source_phrase.order_rank))
        pairs.append(ExtractionPair(
            document_id=s.document_id, sentence_id=s.sentence_id, entity=e,
            key=q.source_phrase.text, key_source=KeySource.FORWARD_PHRASE,
            question_text=q.text, answer_text=a.text, confidence=a.confidence))

    for e in unkeyed:
        q = reverse_question(e)
        if diagnostics is not None:
            diagnostics.reverse_questions += 1
        a = _ask(reader, q, s.text, diagnostics)
        if a.empty:
            if diagnostics is not None:
                diagnostics.reverse_discarded_empty += 1
            continue
        if _overlaps_any_entity(a, s):
            if diagnostics is not None:
                diagnostics.reverse_discarded_entity_overlap += 1
            continue
        pairs.append(ExtractionPair(
            document_id=s.document_id, sentence_id=s.sentence_id, entity=e,
            key=a.text, key_source=KeySource.REVERSE_ANSWER,
            question_text=q.text, answer_text=a.text, confidence=a.confidence))

    if diagnostics is not None:
        diagnostics.pairs = len(pairs)
    return pairs


def write_pairs(pairs: Iterable[ExtractionPair], fh: IO[str]) -> None:
    """Emit extraction pairs as JSONL, one record per pair."""
    for pair in pairs:
        fh.write(json.dumps(pair.to_record(), ensure_ascii=False))
        fh.write("\n")
